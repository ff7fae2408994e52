#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fockcap/fock.hpp"

namespace fockcap {

// ---- capacity bounds, bits per channel use ----

double cap_lower_thermal(double eta, double n_s, double n_b);
double cap_upper_gio_thermal(double eta, double n_s, double n_b);
double cap_upper_ks_thermal(double eta, double n_s, double n_b);

double cap_lower_additive(double n_s, double n_bar);
double cap_upper_gio_additive(double n_s, double n_bar);
double cap_upper_ks_additive(double n_s, double n_bar);

// ---- dimension count of the total-photon cutoff ----

struct RankBoundReport {
    double exact_log2_rank;  // log2 of the exact rank, big-integer backed
    double delta_used;       // minimal admissible slack (log2 e + log2(1+1/n_s))/n
    double bound;            // n * (g(n_s) + delta_used)
    double margin;           // bound - exact_log2_rank
    bool holds;
};

// Cutoff at ceil(n * n_s) total photons over n modes against the
// 2^{n(g(n_s) + delta)} counting bound at the minimal admissible delta.
RankBoundReport rank_bound_check(long n, double n_s);

// ---- success-probability envelopes above capacity ----

/**
 * Slack schedule entering the envelopes.  The three functions decay to zero
 * in n (default n^-4); the two margins are small constants eating into the
 * rate gap (default 0.01 each).
 */
struct DeltaSchedule {
    std::function<double(long)> constraint_slack;     // photon-cutoff slack
    std::function<double(long)> gentle_slack;         // measurement disturbance
    std::function<double(long)> concentration_slack;  // output-cutoff slack
    double cutoff_margin = 0.01;
    double rank_margin = 0.01;

    DeltaSchedule();
};

struct EnvelopeParams {
    double rate;  // attempted bits per use
    double n_s;   // mean photon constraint
    bool additive = false;
    double eta = 1.0;   // thermal-channel parameters
    double n_b = 0.0;
    double n_bar = 0.0;  // additive-channel variance
    DeltaSchedule deltas;
};

// Rate above which each envelope decays exponentially (margins not included).
double envelope_threshold_ks(const EnvelopeParams& p);
double envelope_threshold_gio(const EnvelopeParams& p);

// Success bound via the loss-amplifier factorization and the cutoff rank.
double converse_envelope_ks(const EnvelopeParams& p, long n);
// Success bound via collision-entropy smoothing of the output.
double converse_envelope_gio(const EnvelopeParams& p, long n);

// ---- Monte Carlo experiments backing the envelope slacks ----

struct ConcentrationReport {
    long n;
    long trials;
    double threshold;  // exceedance level for the output photon sum
    double empirical_fail_rate;
    double chebyshev_bound;  // C / n with C = max variance / delta5^2
    double max_variance;
    bool holds;  // empirical <= bound + 3 sigma of the estimator
};

// Sample output photon sums for the given input profile and compare the
// exceedance frequency with the Chebyshev certificate.
ConcentrationReport concentration_experiment(const std::vector<int>& profile,
                                             double eta, double n_b,
                                             double delta5, long trials,
                                             std::uint64_t seed, int dim = 0);

struct CodebookSpec {
    int n_modes = 1;     // 1 or 2
    double power = 1.0;  // per-mode mean photons of the live codewords
    double mix_p = 0.0;  // vacuum mixing weight
    double n_s = 1.0;    // must equal (1 - mix_p) * power
};

struct MeanConstraintReport {
    double success_ref;   // optimal binary discrimination of pure codewords
    double error_ref;
    double success_mixed;  // same measurement on the vacuum-mixed codewords
    double success_floor;  // (1 - mix_p) * (1 - error_ref)
    bool floor_holds;
    double purified_mean;         // photons per mode of the purified codeword
    double purified_mean_closed;  // ((1-p) n P + p) / (n + 1)
    bool purified_matches_n_s;
};

// Two antipodal coherent codewords through the thermal channel: how vacuum
// mixing buys back the mean constraint while keeping most of the success.
MeanConstraintReport mean_constraint_demo(const CodebookSpec& spec, double eta,
                                          double n_b, int dim);

struct QubitConverseReport {
    long messages;  // M = ceil(2^{n rate})
    double bound;   // 2^{-n (rate - 1)}
    double max_avg_success;
    int instances;
    bool holds;
};

// Average success of random M-element measurements against random codeword
// states on n qubits never beats 2^{-n(rate-1)}.
QubitConverseReport qubit_converse_check(int n, double rate, int instances,
                                         std::uint64_t seed);

}  // namespace fockcap
