#include "fockcap/converse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "fockcap/channels.hpp"
#include "fockcap/entropy.hpp"
#include "fockcap/rng.hpp"

namespace fockcap {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_thermal_params(double eta, double n_b) {
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, "transmissivity must lie in [0,1]");
    require(std::isfinite(n_b) && n_b >= 0.0, "environment occupancy must be >= 0");
}

void check_signal(double n_s) {
    require(std::isfinite(n_s) && n_s >= 0.0, "signal photon number must be >= 0");
}

double slack_at(const std::function<double(long)>& f, long n) {
    double v = f(n);
    require(std::isfinite(v) && v >= 0.0, "slack schedules must return nonnegative reals");
    return v;
}

void check_envelope_params(const EnvelopeParams& p) {
    require(std::isfinite(p.rate), "rate must be finite");
    require(std::isfinite(p.n_s) && p.n_s > 0.0, "signal photon number must be > 0");
    if (p.additive)
        require(std::isfinite(p.n_bar) && p.n_bar >= 0.0, "added noise must be >= 0");
    else
        check_thermal_params(p.eta, p.n_b);
    require(bool(p.deltas.constraint_slack) && bool(p.deltas.gentle_slack) &&
                bool(p.deltas.concentration_slack),
            "all three slack schedules must be supplied");
    require(std::isfinite(p.deltas.cutoff_margin) && p.deltas.cutoff_margin >= 0.0,
            "cutoff margin must be >= 0");
    require(std::isfinite(p.deltas.rank_margin) && p.deltas.rank_margin >= 0.0,
            "rank margin must be >= 0");
}

// environment noise photons entering the output, shared by both families
double noise_floor(const EnvelopeParams& p) {
    return p.additive ? p.n_bar : (1.0 - p.eta) * p.n_b;
}

}  // namespace

double cap_lower_thermal(double eta, double n_s, double n_b) {
    check_thermal_params(eta, n_b);
    check_signal(n_s);
    double y = (1.0 - eta) * n_b;
    return g(eta * n_s + y) - g(y);
}

double cap_upper_gio_thermal(double eta, double n_s, double n_b) {
    check_thermal_params(eta, n_b);
    check_signal(n_s);
    double y = (1.0 - eta) * n_b;
    return g(eta * n_s + y) - std::log2(1.0 + 2.0 * y);
}

double cap_upper_ks_thermal(double eta, double n_s, double n_b) {
    check_thermal_params(eta, n_b);
    check_signal(n_s);
    return g(eta * n_s / ((1.0 - eta) * n_b + 1.0));
}

double cap_lower_additive(double n_s, double n_bar) {
    check_signal(n_s);
    require(std::isfinite(n_bar) && n_bar >= 0.0, "added noise must be >= 0");
    return g(n_s + n_bar) - g(n_bar);
}

double cap_upper_gio_additive(double n_s, double n_bar) {
    check_signal(n_s);
    require(std::isfinite(n_bar) && n_bar >= 0.0, "added noise must be >= 0");
    return g(n_s + n_bar) - std::log2(1.0 + 2.0 * n_bar);
}

double cap_upper_ks_additive(double n_s, double n_bar) {
    check_signal(n_s);
    require(std::isfinite(n_bar) && n_bar >= 0.0, "added noise must be >= 0");
    return g(n_s / (n_bar + 1.0));
}

RankBoundReport rank_bound_check(long n, double n_s) {
    require(n >= 1 && n <= 100000, "mode count out of range");
    require(std::isfinite(n_s) && n_s > 0.0, "signal photon number must be > 0");
    double target = double(n) * n_s;
    // integer targets must not be bumped up by representation noise
    long limit = std::lround(std::ceil(target - 1e-9 * std::max(1.0, target)));
    if (limit < 0) limit = 0;
    require(limit <= 2000000000L, "photon cutoff out of range");
    double exact = log2_projector_rank(int(n), int(limit));
    double delta = (std::log2(std::exp(1.0)) + std::log2(1.0 + 1.0 / n_s)) / double(n);
    double bound = double(n) * (g(n_s) + delta);
    double margin = bound - exact;
    bool holds = exact <= bound + 1e-9 * std::max(1.0, std::abs(bound));
    return RankBoundReport{exact, delta, bound, margin, holds};
}

DeltaSchedule::DeltaSchedule()
    : constraint_slack([](long n) { return std::pow(double(n), -4.0); }),
      gentle_slack([](long n) { return std::pow(double(n), -4.0); }),
      concentration_slack([](long n) { return std::pow(double(n), -4.0); }) {}

double envelope_threshold_ks(const EnvelopeParams& p) {
    check_envelope_params(p);
    return g(p.n_s * (p.additive ? 1.0 : p.eta) / (noise_floor(p) + 1.0));
}

double envelope_threshold_gio(const EnvelopeParams& p) {
    check_envelope_params(p);
    double y = noise_floor(p);
    double mean_out = (p.additive ? p.n_s : p.eta * p.n_s) + y;
    return g(mean_out) - std::log2(1.0 + 2.0 * y);
}

double converse_envelope_ks(const EnvelopeParams& p, long n) {
    require(n >= 1, "n must be >= 1");
    double thr = envelope_threshold_ks(p);
    double d1 = slack_at(p.deltas.constraint_slack, n);
    double d4 = slack_at(p.deltas.gentle_slack, n);
    double expo = p.rate - thr - p.deltas.cutoff_margin - p.deltas.rank_margin;
    double exponential = std::exp2(-double(n) * expo);
    double root = 2.0 * std::sqrt(d1 + d4 + 2.0 * std::sqrt(d1));
    return std::min(1.0, exponential + root);
}

double converse_envelope_gio(const EnvelopeParams& p, long n) {
    require(n >= 1, "n must be >= 1");
    check_envelope_params(p);
    double y = noise_floor(p);
    // the output-mean slack widens the entropy term before the rate is compared
    double mean_out = (p.additive ? p.n_s : p.eta * p.n_s) + y + p.deltas.cutoff_margin;
    double thr = g(mean_out) - std::log2(1.0 + 2.0 * y);
    double d1 = slack_at(p.deltas.constraint_slack, n);
    double d6 = slack_at(p.deltas.concentration_slack, n);
    double expo = p.rate - thr + std::log2(double(n)) / double(n) - p.deltas.rank_margin;
    double exponential = std::exp2(-double(n) * expo);
    double root = 2.0 * std::sqrt(d1 + 2.0 * std::sqrt(d1) + d6);
    return std::min(1.0, exponential + 1.0 / double(n) + root);
}

namespace {

// truncation must hold both the mass and the second moment of the tail
bool tabulation_adequate(const PhotonDistribution& pd) {
    double d = double(pd.probs.size());
    return pd.tail * d * d <= 1e-6 && pd.probs.back() * d * d <= 1e-9;
}

}  // namespace

ConcentrationReport concentration_experiment(const std::vector<int>& profile, double eta,
                                             double n_b, double delta5, long trials,
                                             std::uint64_t seed, int dim) {
    require(!profile.empty(), "input profile must be nonempty");
    for (int k : profile) require(k >= 0 && k <= 100000, "profile entries must be photon numbers");
    check_thermal_params(eta, n_b);
    require(std::isfinite(delta5) && delta5 > 0.0, "exceedance slack must be > 0");
    require(trials >= 1, "trials must be >= 1");

    long n = long(profile.size());
    double y = (1.0 - eta) * n_b;
    double mean_in = double(std::accumulate(profile.begin(), profile.end(), 0L)) / double(n);

    std::map<int, std::vector<double>> cdfs;
    double max_var = 0.0;
    for (int k : std::set<int>(profile.begin(), profile.end())) {
        PhotonDistribution pd;
        if (dim > 0) {
            pd = thermal_number_dist(k, eta, n_b, dim);
            if (!tabulation_adequate(pd))
                throw TruncationError("output tabulation too small for second-moment accuracy",
                                      2 * dim);
        } else {
            int d = 64;
            double mean_k = eta * k + y;
            while (double(d) < 4.0 * mean_k + 32.0) d *= 2;
            for (;;) {
                pd = thermal_number_dist(k, eta, n_b, d);
                if (tabulation_adequate(pd)) break;
                if (d >= 16384)
                    throw TruncationError(
                        "output tabulation too small for second-moment accuracy", 2 * d);
                d *= 2;
            }
        }
        double m1 = pd.mean();
        max_var = std::max(max_var, pd.second_moment() - m1 * m1);
        std::vector<double> cdf(pd.probs.size());
        std::partial_sum(pd.probs.begin(), pd.probs.end(), cdf.begin());
        cdfs.emplace(k, std::move(cdf));
    }

    std::vector<const std::vector<double>*> at(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) at[i] = &cdfs.at(profile[i]);

    double threshold = double(n) * (eta * mean_in + y + delta5);
    double cheb = max_var / (delta5 * delta5) / double(n);

    long fails = 0;
    for (long t = 0; t < trials; ++t) {
        RandomStream rs(mix_seed(seed, std::uint64_t(t)));
        double total = 0.0;
        for (const auto* cdf : at) {
            double u = rs.next_u01();
            auto it = std::upper_bound(cdf->begin(), cdf->end(), u);
            std::size_t idx = std::size_t(it - cdf->begin());
            if (idx >= cdf->size()) idx = cdf->size() - 1;
            total += double(idx);
        }
        if (total > threshold) ++fails;
    }

    double emp = double(fails) / double(trials);
    double sigma = std::sqrt(std::max(emp * (1.0 - emp), 0.0) / double(trials));
    bool holds = emp <= cheb + 3.0 * sigma + 3.0 / double(trials);
    return ConcentrationReport{n, trials, threshold, emp, cheb, max_var, holds};
}

namespace {

DensityMatrix kron_pair(const DensityMatrix& rho) {
    int d = rho.dim();
    Mat out(Eigen::Index(d) * d, Eigen::Index(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out.block(Eigen::Index(i) * d, Eigen::Index(j) * d, d, d) =
                rho.entries(i, j) * rho.entries;
    double tr = rho.trace();
    double leak = std::max(0.0, 1.0 - tr * tr);
    return DensityMatrix::make_unchecked(std::move(out), leak);
}

}  // namespace

MeanConstraintReport mean_constraint_demo(const CodebookSpec& spec, double eta, double n_b,
                                          int dim) {
    require(spec.n_modes == 1 || spec.n_modes == 2, "demo supports 1 or 2 modes");
    require(std::isfinite(spec.power) && spec.power > 0.0, "codeword power must be > 0");
    require(std::isfinite(spec.mix_p) && spec.mix_p >= 0.0 && spec.mix_p <= 1.0,
            "mixing probability must lie in [0,1]");
    require(std::isfinite(spec.n_s) && spec.n_s > 0.0, "mean constraint must be > 0");
    require(std::abs((1.0 - spec.mix_p) * spec.power - spec.n_s) <=
                1e-12 * std::max(1.0, spec.n_s),
            "mean constraint must equal (1 - mix_p) * power");
    check_thermal_params(eta, n_b);
    require(dim >= 16, "dim too small for the demo");

    double amp = std::sqrt(spec.power);
    FockVector plus = coherent_state(amp, dim);
    FockVector minus = coherent_state(-amp, dim);
    if (plus.leakage > 1e-6)
        throw TruncationError("codeword amplitude leaks past the cutoff",
                              int(4.0 * spec.power) + 32);

    DensityMatrix out_plus = thermal_apply(pure_density(plus), eta, n_b);
    DensityMatrix out_minus = thermal_apply(pure_density(minus), eta, n_b);
    DensityMatrix out_vac = thermal_apply(vacuum_state(dim), eta, n_b);
    if (spec.n_modes == 2) {
        out_plus = kron_pair(out_plus);
        out_minus = kron_pair(out_minus);
        out_vac = kron_pair(out_vac);
    }

    // optimal two-state measurement: project onto the positive part of the
    // difference, score the other codeword with the complement
    Mat diff = out_plus.entries - out_minus.entries;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (diff + diff.adjoint()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian eigensolver did not converge");
    Vec ind(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < ind.size(); ++i)
        ind[i] = es.eigenvalues()[i] > 0.0 ? 1.0 : 0.0;
    Mat proj = es.eigenvectors() * ind.asDiagonal() * es.eigenvectors().adjoint();

    auto score = [&](const DensityMatrix& a, const DensityMatrix& b) {
        double hit_a = (proj * a.entries).real().trace();
        double hit_b = b.trace() - (proj * b.entries).real().trace();
        return 0.5 * hit_a + 0.5 * hit_b;
    };

    double success_ref = score(out_plus, out_minus);
    double error_ref = 1.0 - success_ref;

    double p = spec.mix_p;
    auto mix = [&](const DensityMatrix& a) {
        return DensityMatrix::make_unchecked((1.0 - p) * a.entries + p * out_vac.entries,
                                             (1.0 - p) * a.leakage + p * out_vac.leakage);
    };
    double success_mixed = score(mix(out_plus), mix(out_minus));
    double success_floor = (1.0 - p) * (1.0 - error_ref);

    // mean photons per mode of sqrt(1-p)|alpha..alpha,0> + sqrt(p)|0..0,1>:
    // the ancilla keeps the cross terms exactly zero
    int nm = spec.n_modes;
    double live_norm = plus.norm2();
    double live_photons = 0.0;
    for (int k = 0; k < dim; ++k) live_photons += double(k) * std::norm(plus.amps[k]);
    double total_norm = (1.0 - p) * std::pow(live_norm, nm) + p;
    double total_photons =
        (1.0 - p) * double(nm) * live_photons * std::pow(live_norm, nm - 1) + p;
    double purified_mean = total_photons / total_norm / double(nm + 1);
    double purified_closed =
        ((1.0 - p) * double(nm) * spec.power + p) / double(nm + 1);

    return MeanConstraintReport{
        success_ref,
        error_ref,
        success_mixed,
        success_floor,
        success_mixed >= success_floor - 1e-9,
        purified_mean,
        purified_closed,
        std::abs(purified_closed - spec.n_s) <= 1e-12};
}

QubitConverseReport qubit_converse_check(int n, double rate, int instances, std::uint64_t seed) {
    require(n >= 1 && n <= 10, "qubit count must lie in [1,10]");
    require(std::isfinite(rate) && rate > 0.0, "rate must be > 0");
    require(instances >= 1, "instances must be >= 1");
    require(double(n) * (rate + 1.0) <= 30.0 + 1e-9, "instance too large to evaluate");

    long dim = 1L << n;
    long messages = std::lround(std::ceil(std::exp2(double(n) * rate) - 1e-9));
    double bound = std::exp2(-double(n) * (rate - 1.0));

    // A random POVM obtained by conjugating a fixed partition of identity with
    // a Haar unitary, scored against independent Haar-random pure codeword
    // states, has the same success statistics as a random *diagonal* partition
    // of identity scored against random pure states; only the diagonal
    // occupations of the states enter, and those are Dirichlet distributed —
    // i.e. normalized exponentials.  Everything below is therefore scalar.
    double worst = 0.0;
    bool all_hold = true;
    for (int inst = 0; inst < instances; ++inst) {
        std::uint64_t base = mix_seed(seed, std::uint64_t(inst));

        // pass 1: column normalizers of the random partition
        std::vector<double> colsum(std::size_t(dim), 0.0);
        for (long m = 0; m < messages; ++m) {
            std::uint64_t row = mix_seed(base, std::uint64_t(m));
            for (long k = 0; k < dim; ++k) {
                double u =
                    (double(mix64(row ^ std::uint64_t(2 * k + 1)) >> 11) + 0.5) * 0x1.0p-53;
                colsum[std::size_t(k)] += -std::log(u);
            }
        }

        // pass 2: average success of message m on its own codeword
        double total = 0.0;
        for (long m = 0; m < messages; ++m) {
            std::uint64_t row = mix_seed(base, std::uint64_t(m));
            double occ_sum = 0.0;
            double hit = 0.0;
            for (long k = 0; k < dim; ++k) {
                double u =
                    (double(mix64(row ^ std::uint64_t(2 * k + 1)) >> 11) + 0.5) * 0x1.0p-53;
                double v =
                    (double(mix64(row ^ std::uint64_t(2 * k + 2)) >> 11) + 0.5) * 0x1.0p-53;
                double povm_weight = -std::log(u) / colsum[std::size_t(k)];
                double occ = -std::log(v);
                occ_sum += occ;
                hit += povm_weight * occ;
            }
            total += hit / occ_sum;
        }
        double avg = total / double(messages);
        worst = std::max(worst, avg);
        all_hold = all_hold && avg <= bound + 1e-12;
    }

    return QubitConverseReport{messages, bound, worst, instances, all_hold};
}

}  // namespace fockcap
