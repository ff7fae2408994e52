#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fockcap/channels.hpp"
#include "fockcap/converse.hpp"
#include "fockcap/entropy.hpp"
#include "fockcap/rng.hpp"
#include "fockcap/symplectic.hpp"
#include "run_config.hpp"

#ifndef FOCKCAP_VERSION_STRING
#define FOCKCAP_VERSION_STRING "0.0.0"
#endif

namespace fockcap::cli {

namespace {

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

/**
 * Typed access to the raw parameter map.  Every read is recorded with its
 * resolved value so the output header can echo the full effective config;
 * finish() rejects keys nothing consumed.
 */
class ParamReader {
public:
    explicit ParamReader(const RunConfig& cfg) : params_(cfg.params) {}

    bool has(const std::string& key) const { return params_.count(key) > 0; }

    double real(const std::string& key, double def) {
        double v = def;
        if (auto it = params_.find(key); it != params_.end()) {
            v = parse_real(key, it->second);
            used_.insert(key);
        }
        record(key, format_g17(v));
        return v;
    }

    long integer(const std::string& key, long def) {
        double v = real(key, double(def));
        long n = std::lround(v);
        if (double(n) != v) fail("parameter " + key + " must be an integer");
        resolved_.back().second = std::to_string(n);
        return n;
    }

    std::string word(const std::string& key, const std::string& def,
                     std::initializer_list<const char*> allowed) {
        std::string v = def;
        if (auto it = params_.find(key); it != params_.end()) {
            v = it->second;
            used_.insert(key);
        }
        bool ok = false;
        for (const char* a : allowed) ok = ok || v == a;
        if (!ok) {
            std::string msg = "parameter " + key + " must be one of {";
            bool first = true;
            for (const char* a : allowed) {
                if (!first) msg += ", ";
                msg += a;
                first = false;
            }
            fail(msg + "}, got: " + v);
        }
        record(key, v);
        return v;
    }

    std::string raw(const std::string& key, const std::string& def) {
        std::string v = def;
        if (auto it = params_.find(key); it != params_.end()) {
            v = it->second;
            used_.insert(key);
        }
        record(key, v);
        return v;
    }

    // an axis is "v", "lo:hi:count" (linear) or "log:lo:hi:count" (geometric)
    std::vector<double> axis(const std::string& key, double def) {
        std::string spec = format_g17(def);
        if (auto it = params_.find(key); it != params_.end()) {
            spec = it->second;
            used_.insert(key);
        }
        record(key, spec);
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        bool logspace = !parts.empty() && parts[0] == "log";
        if (logspace) parts.erase(parts.begin());
        if (parts.size() == 1 && !logspace) return {parse_real(key, parts[0])};
        if (parts.size() != 3)
            fail("axis " + key + " must be 'v', 'lo:hi:count' or 'log:lo:hi:count'");
        double lo = parse_real(key, parts[0]);
        double hi = parse_real(key, parts[1]);
        double cnt = parse_real(key, parts[2]);
        long count = std::lround(cnt);
        if (double(count) != cnt || count < 1) fail("axis " + key + " count must be >= 1");
        if (!(hi >= lo)) fail("axis " + key + " needs hi >= lo");
        if (logspace && !(lo > 0.0)) fail("axis " + key + " log spacing needs lo > 0");
        std::vector<double> vals;
        vals.reserve(std::size_t(count));
        if (count == 1) {
            vals.push_back(lo);
        } else if (logspace) {
            double la = std::log(lo), lb = std::log(hi);
            for (long i = 0; i < count; ++i)
                vals.push_back(std::exp(la + (lb - la) * double(i) / double(count - 1)));
        } else {
            for (long i = 0; i < count; ++i)
                vals.push_back(lo + (hi - lo) * double(i) / double(count - 1));
        }
        return vals;
    }

    void finish() const {
        for (const auto& [key, value] : params_)
            if (!used_.count(key)) fail("unknown parameter: " + key);
    }

    const std::vector<std::pair<std::string, std::string>>& resolved() const {
        return resolved_;
    }

private:
    static double parse_real(const std::string& key, const std::string& s) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            fail("parameter " + key + " must be numeric, got: " + s);
        }
        if (pos != s.size()) fail("parameter " + key + " must be numeric, got: " + s);
        return v;
    }

    void record(const std::string& key, const std::string& value) {
        for (auto& kv : resolved_)
            if (kv.first == key) {
                kv.second = value;
                return;
            }
        resolved_.emplace_back(key, value);
    }

    const std::map<std::string, std::string>& params_;
    std::set<std::string> used_;
    std::vector<std::pair<std::string, std::string>> resolved_;
};

Table make_table(const RunConfig& cfg) {
    Table t;
    t.set_meta("tool", "fockcap");
    t.set_meta("version", FOCKCAP_VERSION_STRING);
    t.set_meta("command", cfg.command);
    t.set_meta("format", cfg.format);
    t.set_meta("seed", std::to_string(cfg.seed));
    return t;
}

void echo_params(Table& t, const ParamReader& reader) {
    for (const auto& [key, value] : reader.resolved()) t.set_meta("param." + key, value);
}

// ---------------------------------------------------------------- bounds

CommandOutcome cmd_bounds(const RunConfig& cfg) {
    ParamReader reader(cfg);
    Table t = make_table(cfg);
    std::string channel = reader.word("channel", "thermal", {"thermal", "additive"});
    if (channel == "thermal") {
        auto etas = reader.axis("eta", 0.5);
        auto n_ss = reader.axis("n_s", 1.0);
        auto n_bs = reader.axis("n_b", 1.0);
        reader.finish();
        t.columns = {"eta", "n_s", "n_b", "lower", "upper_gio", "upper_ks",
                     "gap_gio", "gap_ks"};
        for (double eta : etas)
            for (double n_s : n_ss)
                for (double n_b : n_bs) {
                    double lo = cap_lower_thermal(eta, n_s, n_b);
                    double ug = cap_upper_gio_thermal(eta, n_s, n_b);
                    double uk = cap_upper_ks_thermal(eta, n_s, n_b);
                    t.rows.push_back({Cell::number(eta), Cell::number(n_s),
                                      Cell::number(n_b), Cell::number(lo),
                                      Cell::number(ug), Cell::number(uk),
                                      Cell::number(ug - lo), Cell::number(uk - lo)});
                }
    } else {
        auto n_bars = reader.axis("n_bar", 1.0);
        auto n_ss = reader.axis("n_s", 1.0);
        reader.finish();
        t.columns = {"n_bar", "n_s", "lower", "upper_gio", "upper_ks", "gap_gio",
                     "gap_ks"};
        for (double n_bar : n_bars)
            for (double n_s : n_ss) {
                double lo = cap_lower_additive(n_s, n_bar);
                double ug = cap_upper_gio_additive(n_s, n_bar);
                double uk = cap_upper_ks_additive(n_s, n_bar);
                t.rows.push_back({Cell::number(n_bar), Cell::number(n_s),
                                  Cell::number(lo), Cell::number(ug), Cell::number(uk),
                                  Cell::number(ug - lo), Cell::number(uk - lo)});
            }
    }
    echo_params(t, reader);
    t.set_meta("rows", std::to_string(t.rows.size()));
    return {std::move(t), 0};
}

// -------------------------------------------------------------- envelope

CommandOutcome cmd_envelope(const RunConfig& cfg) {
    ParamReader reader(cfg);
    Table t = make_table(cfg);

    long theorem = reader.integer("theorem", 1);
    if (theorem != 1 && theorem != 2) fail("theorem must be 1 or 2");
    std::string channel = reader.word("channel", "thermal", {"thermal", "additive"});

    EnvelopeParams p;
    p.n_s = reader.real("n_s", 1.0);
    p.additive = channel == "additive";
    if (p.additive) {
        p.n_bar = reader.real("n_bar", 1.0);
    } else {
        p.eta = reader.real("eta", 0.5);
        p.n_b = reader.real("n_b", 1.0);
    }
    p.deltas.cutoff_margin = reader.real("cutoff_margin", 0.01);
    p.deltas.rank_margin = reader.real("rank_margin", 0.01);
    double slack_exp = reader.real("slack_exponent", 4.0);
    if (!(slack_exp > 0.0)) fail("slack_exponent must be > 0");
    auto decay = [slack_exp](long n) { return std::pow(double(n), -slack_exp); };
    p.deltas.constraint_slack = decay;
    p.deltas.gentle_slack = decay;
    p.deltas.concentration_slack = decay;

    p.rate = 0.0;  // placeholder until the threshold is known
    double threshold =
        theorem == 1 ? envelope_threshold_ks(p) : envelope_threshold_gio(p);
    if (reader.has("rate")) {
        p.rate = reader.real("rate", threshold);
    } else {
        p.rate = threshold + reader.real("rate_above", 0.2);
    }

    long n_min = reader.integer("n_min", 10);
    long n_max = reader.integer("n_max", 10000);
    long n_points = reader.integer("n_points", 25);
    std::string spacing = reader.word("spacing", "log", {"log", "lin"});
    if (n_min < 1 || n_max < n_min) fail("need 1 <= n_min <= n_max");
    if (n_points < 1) fail("n_points must be >= 1");
    reader.finish();

    std::set<long> ns;
    if (n_points == 1) {
        ns.insert(n_min);
    } else {
        for (long i = 0; i < n_points; ++i) {
            double f = double(i) / double(n_points - 1);
            double v = spacing == "log"
                           ? std::exp(std::log(double(n_min)) +
                                      f * (std::log(double(n_max)) - std::log(double(n_min))))
                           : double(n_min) + f * double(n_max - n_min);
            ns.insert(std::lround(v));
        }
    }

    t.columns = {"n", "bound"};
    std::vector<double> bounds;
    for (long n : ns) {
        double b = theorem == 1 ? converse_envelope_ks(p, n) : converse_envelope_gio(p, n);
        bounds.push_back(b);
        t.rows.push_back({Cell::number(double(n)), Cell::number(b)});
    }

    // nonincreasing once below the trivial cap
    bool tail_monotone = true;
    for (std::size_t i = 1; i < bounds.size(); ++i)
        if (bounds[i - 1] < 1.0 && bounds[i] > bounds[i - 1] + 1e-15) tail_monotone = false;

    echo_params(t, reader);
    t.set_meta("rate", format_g17(p.rate));
    t.set_meta("threshold", format_g17(threshold));
    t.set_meta("tail_monotone", tail_monotone ? "true" : "false");
    t.set_meta("rows", std::to_string(t.rows.size()));
    return {std::move(t), 0};
}

// ------------------------------------------------------------------ dist

CommandOutcome cmd_dist(const RunConfig& cfg) {
    ParamReader reader(cfg);
    Table t = make_table(cfg);

    std::string channel = reader.word("channel", "thermal", {"loss", "additive", "thermal"});
    long k = reader.integer("k", 0);
    long dim = reader.integer("dim", 64);
    if (k < 0) fail("k must be >= 0");
    if (dim < 1 || dim > 1000000) fail("dim out of range");

    PhotonDistribution pd;
    double expected_mean = 0.0;
    if (channel == "loss") {
        double eta = reader.real("eta", 0.5);
        reader.finish();
        pd = loss_number_dist(int(k), eta, int(dim));
        expected_mean = eta * double(k);
    } else if (channel == "additive") {
        double n_bar = reader.real("n_bar", 1.0);
        reader.finish();
        pd = additive_number_dist(int(k), n_bar, int(dim));
        expected_mean = double(k) + n_bar;
    } else {
        double eta = reader.real("eta", 0.5);
        double n_b = reader.real("n_b", 1.0);
        reader.finish();
        pd = thermal_number_dist(int(k), eta, n_b, int(dim));
        expected_mean = eta * double(k) + (1.0 - eta) * n_b;
    }

    t.columns = {"l", "prob"};
    for (std::size_t l = 0; l < pd.probs.size(); ++l)
        t.rows.push_back({Cell::number(double(l)), Cell::number(pd.probs[l])});

    double mean = pd.mean();
    double defect = std::abs(mean - expected_mean);
    echo_params(t, reader);
    t.set_meta("mean", format_g17(mean));
    t.set_meta("expected_mean", format_g17(expected_mean));
    t.set_meta("mean_defect", format_g17(defect));
    t.set_meta("tail", format_g17(pd.tail));
    t.set_meta("rows", std::to_string(t.rows.size()));

    // with a negligible tail the tabulated mean must reproduce the law
    int exit_code = 0;
    if (pd.tail > 1e-9 || defect > 1e-8 + 8.0 * pd.tail * double(dim)) exit_code = 3;
    return {std::move(t), exit_code};
}

// ---------------------------------------------------------------- verify

void add_check(Table& t, bool& all_pass, const std::string& suite,
               const std::string& check, double value, double threshold, bool pass) {
    t.rows.push_back({Cell::word(suite), Cell::word(check), Cell::number(value),
                      Cell::number(threshold), Cell::flag(pass)});
    all_pass = all_pass && pass;
}

void verify_decompositions(Table& t, bool& all_pass) {
    double worst_thermal = 0.0, worst_thermal_add = 0.0, worst_additive = 0.0;
    for (int i = 0; i < 9; ++i) {
        double eta = 0.05 + 0.1 * double(i);
        for (double n_b : {0.1, 1.0, 10.0}) {
            GaussChannel direct = make_thermal(eta, n_b);
            double gain = (1.0 - eta) * n_b + 1.0;
            GaussChannel via_amp = compose(make_amplifier(gain), make_loss(eta / gain));
            worst_thermal = std::max({worst_thermal, std::abs(direct.x - via_amp.x),
                                      std::abs(direct.y - via_amp.y)});
            GaussChannel via_add =
                compose(make_additive((1.0 - eta) * n_b), make_loss(eta));
            worst_thermal_add =
                std::max({worst_thermal_add, std::abs(direct.x - via_add.x),
                          std::abs(direct.y - via_add.y)});
        }
    }
    for (double n_bar : {0.1, 1.0, 10.0}) {
        GaussChannel direct = make_additive(n_bar);
        GaussChannel via =
            compose(make_amplifier(n_bar + 1.0), make_loss(1.0 / (n_bar + 1.0)));
        worst_additive = std::max(
            {worst_additive, std::abs(direct.x - via.x), std::abs(direct.y - via.y)});
    }
    add_check(t, all_pass, "decompositions", "thermal_vs_amplifier_loss", worst_thermal,
              1e-14, worst_thermal <= 1e-14);
    add_check(t, all_pass, "decompositions", "thermal_vs_additive_loss", worst_thermal_add,
              1e-14, worst_thermal_add <= 1e-14);
    add_check(t, all_pass, "decompositions", "additive_vs_amplifier_loss", worst_additive,
              1e-14, worst_additive <= 1e-14);
}

void verify_smoothing(Table& t, bool& all_pass, long trials, std::uint64_t seed) {
    long violations = 0;
    double worst_distance = 0.0, worst_norm = 0.0, worst_min = 0.0;
    for (long i = 0; i < trials; ++i) {
        RandomStream rs(mix_seed(seed, std::uint64_t(i)));
        std::size_t n = 2 + rs.next_u64() % 39;
        std::vector<double> p(n);
        double s = 0.0;
        bool spiky = rs.next_u01() < 0.25;
        for (double& v : p) {
            v = rs.next_exp();
            if (spiky) v *= v;
            s += v;
        }
        for (double& v : p) v /= s;
        double alpha = 1.25 + 6.0 * rs.next_u01();
        if (rs.next_u01() < 0.3) alpha = double(2 + int(rs.next_u64() % 4));
        double cap = 0.0;
        for (double v : p) cap += std::max(v - 1.0 / double(n), 0.0);
        double eps = cap * (0.02 + 0.96 * rs.next_u01());
        if (!(eps > 0.0)) continue;

        SmoothingCheck chk = verify_renyi_smoothing(p, alpha, eps);
        SmoothingResult sm = smooth_min_entropy(p, eps);
        if (!chk.holds) ++violations;
        worst_distance = std::max(worst_distance, std::abs(sm.achieved_distance - eps));
        double qs = 0.0, qmin = 0.0;
        for (double q : sm.smoothed) {
            qs += q;
            qmin = std::min(qmin, q);
        }
        worst_norm = std::max(worst_norm, std::abs(qs - 1.0));
        worst_min = std::max(worst_min, -qmin);
    }
    add_check(t, all_pass, "smoothing", "inequality_violations", double(violations), 0.0,
              violations == 0);
    add_check(t, all_pass, "smoothing", "distance_defect", worst_distance, 1e-12,
              worst_distance <= 1e-12);
    add_check(t, all_pass, "smoothing", "smoothed_normalization", worst_norm, 1e-12,
              worst_norm <= 1e-12);
    add_check(t, all_pass, "smoothing", "smoothed_negativity", worst_min, 0.0,
              worst_min <= 0.0);
}

void verify_gentle(Table& t, bool& all_pass, long trials, std::uint64_t seed) {
    long violations = 0;
    double worst_excess = -1.0;
    for (long i = 0; i < trials; ++i) {
        RandomStream rs(mix_seed(seed, 0x67656e746cULL + std::uint64_t(i)));
        int dim = 2 + int(rs.next_u64() % 15);
        Mat gm(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) gm(r, c) = cplx(rs.next_gauss(), rs.next_gauss());
        Mat rho_raw = gm * gm.adjoint();
        rho_raw /= rho_raw.real().trace();
        DensityMatrix rho = DensityMatrix::make(rho_raw, 0.0);

        Mat hm(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) hm(r, c) = cplx(rs.next_gauss(), rs.next_gauss());
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (hm + hm.adjoint()));
        Vec w(dim);
        for (int r = 0; r < dim; ++r) w[r] = rs.next_u01();
        Mat op = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();

        double kept = (op * rho.entries).real().trace();
        double defect = gentle_measurement_defect(rho, op);
        double bound = 2.0 * std::sqrt(std::max(0.0, 1.0 - kept));
        double excess = defect - bound;
        worst_excess = std::max(worst_excess, excess);
        if (excess > 1e-9) ++violations;
    }
    add_check(t, all_pass, "gentle", "inequality_violations", double(violations), 0.0,
              violations == 0);
    add_check(t, all_pass, "gentle", "worst_excess", worst_excess, 1e-9,
              worst_excess <= 1e-9);
}

void verify_rank(Table& t, bool& all_pass) {
    double min_margin = std::numeric_limits<double>::infinity();
    bool holds = true;
    for (long n = 1; n <= 200; ++n)
        for (double n_s : {0.5, 1.0, 5.0}) {
            RankBoundReport r = rank_bound_check(n, n_s);
            min_margin = std::min(min_margin, r.margin);
            holds = holds && r.holds;
        }
    add_check(t, all_pass, "rank", "min_margin", min_margin, 0.0,
              holds && min_margin > 0.0);
}

void verify_qubit(Table& t, bool& all_pass, long trials, std::uint64_t seed) {
    bool holds = true;
    double worst_ratio = 0.0;
    for (int n = 1; n <= 6; ++n)
        for (double rate : {1.5, 2.0}) {
            QubitConverseReport r = qubit_converse_check(
                n, rate, int(trials), mix_seed(seed, std::uint64_t(n * 8) + (rate > 1.75)));
            holds = holds && r.holds;
            worst_ratio = std::max(worst_ratio, r.max_avg_success / r.bound);
        }
    add_check(t, all_pass, "qubit", "worst_success_over_bound", worst_ratio, 1.0,
              holds && worst_ratio <= 1.0);
}

CommandOutcome cmd_verify(const RunConfig& cfg) {
    ParamReader reader(cfg);
    Table t = make_table(cfg);
    std::string suite =
        reader.word("suite", "all",
                    {"all", "decompositions", "smoothing", "gentle", "rank", "qubit"});
    long trials = reader.integer("trials", 0);  // 0 = per-suite default
    reader.finish();
    if (trials < 0) fail("trials must be >= 0");

    t.columns = {"suite", "check", "value", "threshold", "pass"};
    bool all_pass = true;
    if (suite == "all" || suite == "decompositions") verify_decompositions(t, all_pass);
    if (suite == "all" || suite == "smoothing")
        verify_smoothing(t, all_pass, trials > 0 ? trials : 2000, cfg.seed);
    if (suite == "all" || suite == "gentle")
        verify_gentle(t, all_pass, trials > 0 ? trials : 500, cfg.seed);
    if (suite == "all" || suite == "rank") verify_rank(t, all_pass);
    if (suite == "all" || suite == "qubit")
        verify_qubit(t, all_pass, trials > 0 ? trials : 20, cfg.seed);

    echo_params(t, reader);
    t.set_meta("all_pass", all_pass ? "true" : "false");
    t.set_meta("rows", std::to_string(t.rows.size()));
    return {std::move(t), all_pass ? 0 : 2};
}

// ------------------------------------------------------------------ demo

CommandOutcome demo_mean_constraint(ParamReader& reader, Table&& t) {
    CodebookSpec spec;
    spec.n_modes = int(reader.integer("n_modes", 1));
    spec.power = reader.real("power", 2.0);
    spec.mix_p = reader.real("mix_p", 0.5);
    spec.n_s = reader.has("n_s") ? reader.real("n_s", 0.0)
                                 : (1.0 - spec.mix_p) * spec.power;
    double eta = reader.real("eta", 0.8);
    double n_b = reader.real("n_b", 0.5);
    long dim = reader.integer("dim", 40);
    reader.finish();

    MeanConstraintReport r = mean_constraint_demo(spec, eta, n_b, int(dim));

    t.columns = {"success_ref", "error_ref", "success_mixed", "success_floor",
                 "floor_holds", "purified_mean", "purified_mean_closed",
                 "meets_constraint_exactly"};
    t.rows.push_back({Cell::number(r.success_ref), Cell::number(r.error_ref),
                      Cell::number(r.success_mixed), Cell::number(r.success_floor),
                      Cell::flag(r.floor_holds), Cell::number(r.purified_mean),
                      Cell::number(r.purified_mean_closed),
                      Cell::flag(r.purified_matches_n_s)});
    echo_params(t, reader);
    t.set_meta("n_s", format_g17(spec.n_s));
    t.set_meta("rows", "1");

    bool ok = r.floor_holds &&
              std::abs(r.purified_mean - r.purified_mean_closed) <= 1e-12;
    return {std::move(t), ok ? 0 : 3};
}

CommandOutcome demo_concentration(const RunConfig& cfg, ParamReader& reader, Table&& t) {
    double eta = reader.real("eta", 0.5);
    double n_b = reader.real("n_b", 1.0);
    double delta5 = reader.real("delta5", 0.1);
    long trials = reader.integer("trials", 10000);
    long dim = reader.integer("dim", 0);
    std::string profile_spec = reader.raw("profile", "vacuum");
    std::string n_list = reader.raw("n_list", "50,100,200,400");
    reader.finish();
    if (trials < 1) fail("trials must be >= 1");
    if (dim < 0) fail("dim must be >= 0");

    std::vector<std::vector<int>> profiles;
    if (profile_spec == "vacuum") {
        std::stringstream ss(n_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            long n = std::stol(tok);
            if (n < 1) fail("n_list entries must be >= 1");
            profiles.emplace_back(std::size_t(n), 0);
        }
    } else {
        std::vector<int> prof;
        std::stringstream ss(profile_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) prof.push_back(int(std::stol(tok)));
        profiles.push_back(std::move(prof));
    }
    if (profiles.empty()) fail("no profiles requested");

    t.columns = {"n", "trials", "threshold", "empirical_fail_rate", "chebyshev_bound",
                 "max_variance", "holds"};
    bool all_hold = true;
    for (const auto& prof : profiles) {
        ConcentrationReport r = concentration_experiment(prof, eta, n_b, delta5, trials,
                                                         cfg.seed, int(dim));
        all_hold = all_hold && r.holds;
        t.rows.push_back({Cell::number(double(r.n)), Cell::number(double(r.trials)),
                          Cell::number(r.threshold), Cell::number(r.empirical_fail_rate),
                          Cell::number(r.chebyshev_bound), Cell::number(r.max_variance),
                          Cell::flag(r.holds)});
    }
    echo_params(t, reader);
    t.set_meta("rows", std::to_string(t.rows.size()));
    return {std::move(t), all_hold ? 0 : 3};
}

CommandOutcome cmd_demo(const RunConfig& cfg) {
    ParamReader reader(cfg);
    Table t = make_table(cfg);
    std::string which =
        reader.word("demo", "mean-constraint", {"mean-constraint", "concentration"});
    if (which == "mean-constraint") return demo_mean_constraint(reader, std::move(t));
    return demo_concentration(cfg, reader, std::move(t));
}

}  // namespace

CommandOutcome run_command(const RunConfig& cfg) {
    if (cfg.command == "bounds") return cmd_bounds(cfg);
    if (cfg.command == "envelope") return cmd_envelope(cfg);
    if (cfg.command == "dist") return cmd_dist(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "demo") return cmd_demo(cfg);
    fail("unknown command: " + cfg.command);
    return {};
}

}  // namespace fockcap::cli
