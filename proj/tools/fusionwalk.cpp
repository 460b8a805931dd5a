#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fusionwalk/amenability.hpp"
#include "fusionwalk/boundary.hpp"
#include "fusionwalk/fusion.hpp"
#include "fusionwalk/hamana.hpp"
#include "fusionwalk/io.hpp"
#include "fusionwalk/kernel.hpp"
#include "fusionwalk/measure.hpp"
#include "fusionwalk/sampling.hpp"

namespace fw = fusionwalk;
using fw::io::fmt17;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNonConverged = 2;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // fixed newlines on every platform
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    return out;
}

std::vector<int> tl_truncation(const fw::TemperleyLiebSystem& sys, int L) {
    std::vector<int> labels;
    for (int n = 0; n <= L; ++n)
        if (sys.valid(n)) labels.push_back(n);
    return labels;
}

// Step measure on integer labels, parsed from "1:1" style specs.
std::vector<std::pair<int, double>> parse_int_measure(const std::string& spec) {
    std::vector<std::pair<int, double>> out;
    std::string item;
    std::istringstream ss(spec);
    double total = 0.0;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("measure: entries must look like label:mass");
        const int label = std::stoi(item.substr(0, colon));
        const double mass = std::stod(item.substr(colon + 1));
        if (!(mass > 0.0)) throw std::invalid_argument("measure: masses must be positive");
        out.emplace_back(label, mass);
        total += mass;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("measure: masses must sum to 1 within 1e-12");
    return out;
}

struct MeanScenario {
    std::string model = "tl";
    double q = 0.5;
    std::string mu;
    int trunc = 200;
    int window = 200;
    std::string out;
};

template <typename S>
int run_mean(const S& sys, const MeanScenario& sc,
             const std::vector<std::pair<typename S::Label, double>>& mu,
             const std::vector<typename S::Label>& labels) {
    const fw::QParam q(sc.q);
    const fw::TransitionKernel pmu = fw::walk_kernel(sys, mu, labels, q);
    std::vector<fw::TransitionKernel> generators;
    for (const auto& [s, m] : mu)
        generators.push_back(fw::walk_kernel(sys, {{s, 1.0}}, labels, q));

    std::vector<double> start(labels.size(), 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == sys.unit()) start[i] = 1.0;
    const fw::CesaroVector ces = fw::cesaro_mean(start, pmu, sc.window);
    const fw::MeanCandidate cand = fw::mean_residual(ces.v, generators);

    auto out = open_out(sc.out);
    out << "model,q,window";
    for (const auto& g : cand.generators) out << ",residual_" << g;
    out << ",leak\n";
    out << sc.model << ',' << fmt17(sc.q) << ',' << sc.window;
    for (double r : cand.residuals) out << ',' << fmt17(r);
    out << ',' << fmt17(ces.leak) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random walks and boundary diagnostics on fusion rings"};
    app.set_config("--config");
    app.require_subcommand(1);

    // fusion ------------------------------------------------------------
    auto* fusion = app.add_subcommand("fusion", "fusion-ring queries");
    fusion->require_subcommand(1);

    struct {
        std::string model = "auf";
        double q = 0.5;
        std::string word, x, y;
    } fu;
    auto* fu_qdim = fusion->add_subcommand("qdim", "quantum dimension of a label");
    fu_qdim->add_option("--model", fu.model)->check(CLI::IsMember({"auf", "tl", "spin"}));
    fu_qdim->add_option("--q", fu.q);
    fu_qdim->add_option("--word", fu.word)->required();
    auto* fu_dec = fusion->add_subcommand("decompose", "tensor decomposition of two labels");
    fu_dec->add_option("--model", fu.model)->check(CLI::IsMember({"auf", "tl", "spin"}));
    fu_dec->add_option("--q", fu.q);
    fu_dec->add_option("--x", fu.x)->required();
    fu_dec->add_option("--y", fu.y)->required();

    // walk ---------------------------------------------------------------
    auto* walk = app.add_subcommand("walk", "random walk on the free-unitary fusion ring");
    walk->require_subcommand(1);

    struct {
        double q = 0.5;
        std::string mu = "a:0.5,b:0.5";
        int n = 30;
        double prune = 1e-12;
        std::size_t cap = 2'000'000;
        std::string out;
    } wp;
    auto* walk_power = walk->add_subcommand("power", "iterated convolution power of mu");
    walk_power->add_option("--q", wp.q);
    walk_power->add_option("--mu", wp.mu);
    walk_power->add_option("--n", wp.n);
    walk_power->add_option("--prune", wp.prune);
    walk_power->add_option("--cap", wp.cap);
    walk_power->add_option("--out", wp.out)->required();

    struct {
        double q = 0.5;
        std::string mu = "a:0.5,b:0.5";
        std::uint64_t paths = 1000;
        int steps = 100;
        std::uint64_t seed = 1;
        int tail = 3;
        int threads = 1;
        std::string out;
    } ws;
    auto* walk_sample = walk->add_subcommand("sample", "Monte Carlo paths of the walk");
    walk_sample->add_option("--q", ws.q);
    walk_sample->add_option("--mu", ws.mu);
    walk_sample->add_option("--paths", ws.paths);
    walk_sample->add_option("--steps", ws.steps);
    walk_sample->add_option("--seed", ws.seed);
    walk_sample->add_option("--tail", ws.tail);
    walk_sample->add_option("--threads", ws.threads);
    walk_sample->add_option("--out", ws.out)->required();

    struct {
        double q = 0.5;
        std::string mu = "a:0.5,b:0.5";
        std::string starts = "e,a,b";
        int n = 40;
        int suffixes_maxlen = 2;
        int tracked = 16;
        std::string out;
    } wst;
    auto* walk_stat = walk->add_subcommand("stationary", "cylinder-mass gaps between starts");
    walk_stat->add_option("--q", wst.q);
    walk_stat->add_option("--mu", wst.mu);
    walk_stat->add_option("--starts", wst.starts);
    walk_stat->add_option("--n", wst.n);
    walk_stat->add_option("--suffixes-maxlen", wst.suffixes_maxlen);
    walk_stat->add_option("--tracked", wst.tracked);
    walk_stat->add_option("--out", wst.out)->required();

    // bounds ---------------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "tail cylinder-mass estimates");
    bounds->require_subcommand(1);

    struct {
        double q = 0.5;
        int k = 0;
    } be;
    auto* bounds_est = bounds->add_subcommand("estimate", "evaluate the displayed lower bound");
    bounds_est->add_option("--q", be.q);
    bounds_est->add_option("--k", be.k);

    struct {
        double q = 0.5;
        std::uint64_t trials = 1000;
        std::size_t maxlen = 5;
        std::size_t N = 1;
        std::uint64_t seed = 1;
        std::string out;
    } bv;
    auto* bounds_verify = bounds->add_subcommand("verify", "randomized bound verification");
    bounds_verify->add_option("--q", bv.q);
    bounds_verify->add_option("--trials", bv.trials);
    bounds_verify->add_option("--maxlen", bv.maxlen);
    bounds_verify->add_option("--N", bv.N);
    bounds_verify->add_option("--seed", bv.seed);
    bounds_verify->add_option("--out", bv.out)->required();

    // amen -----------------------------------------------------------------
    auto* amen = app.add_subcommand("amen", "amenability diagnostics");
    amen->require_subcommand(1);

    struct {
        std::string model = "tl";
        double q = 0.5;
        std::string U = "1";
        int trunc = 200;
        std::string out;
    } ag;
    auto* amen_gamma = amen->add_subcommand("gamma-norm", "fusion-matrix norm vs dimension");
    amen_gamma->add_option("--model", ag.model)->check(CLI::IsMember({"auf", "tl", "spin"}));
    amen_gamma->add_option("--q", ag.q);
    amen_gamma->add_option("--U", ag.U);
    amen_gamma->add_option("--trunc", ag.trunc);
    amen_gamma->add_option("--out", ag.out)->required();

    MeanScenario am;
    auto* amen_mean = amen->add_subcommand("mean", "Cesaro invariant-mean residuals");
    amen_mean->add_option("--model", am.model)->check(CLI::IsMember({"auf", "tl", "spin"}));
    amen_mean->add_option("--q", am.q);
    amen_mean->add_option("--mu", am.mu);
    amen_mean->add_option("--trunc", am.trunc);
    amen_mean->add_option("--window", am.window);
    amen_mean->add_option("--out", am.out)->required();

    // hamana ----------------------------------------------------------------
    auto* hamana = app.add_subcommand("hamana", "idempotents in contraction semigroups");
    hamana->require_subcommand(1);

    struct {
        std::string input;
        double tol = 1e-10;
        int budget = 200;
        std::string out;
    } hm;
    auto* h_min = hamana->add_subcommand("minimal", "descend to an absorbing idempotent");
    auto* h_ces = hamana->add_subcommand("cesaro", "mean-ergodic idempotent of one contraction");
    auto* h_ce = hamana->add_subcommand("choieffros", "product on a ucp idempotent image");
    for (auto* sub : {h_min, h_ces, h_ce}) {
        sub->add_option("--input", hm.input)->required();
        sub->add_option("--tol", hm.tol);
        sub->add_option("--out", hm.out)->required();
    }
    h_min->add_option("--budget", hm.budget);

    CLI11_PARSE(app, argc, argv);

    try {
        // ---- fusion
        if (fu_qdim->parsed() || fu_dec->parsed()) {
            const fw::QParam q(fu.q);
            auto dispatch = [&](const auto& sys) -> int {
                if (fu_qdim->parsed()) {
                    const auto l = sys.parse_label(fu.word);
                    if (!sys.valid(l)) throw std::invalid_argument("invalid label for model");
                    std::cout << fmt17(sys.dim(l, q)) << '\n';
                } else {
                    const auto x = sys.parse_label(fu.x);
                    const auto y = sys.parse_label(fu.y);
                    if (!sys.valid(x) || !sys.valid(y))
                        throw std::invalid_argument("invalid label for model");
                    for (const auto& [z, m] : sys.tensor(x, y))
                        std::cout << sys.label_str(z) << ' ' << m << '\n';
                }
                return kExitOk;
            };
            if (fu.model == "auf") return dispatch(fw::AufSystem{});
            return dispatch(fw::TemperleyLiebSystem{fu.model == "spin"});
        }

        // ---- walk power
        if (walk_power->parsed()) {
            const fw::QParam q(wp.q);
            const fw::AtomicMeasure mu = fw::io::parse_measure(wp.mu);
            const fw::AtomicMeasure acc = fw::convolve_power(mu, wp.n, wp.prune, q, wp.cap);
            auto out = open_out(wp.out);
            out << "word,mass\n";
            for (const auto& [w, m] : acc.atoms()) out << w.str() << ',' << fmt17(m) << '\n';
            out << "# pruned_mass=" << fmt17(acc.pruned_mass()) << '\n';
            return kExitOk;
        }

        // ---- walk sample
        if (walk_sample->parsed()) {
            const fw::QParam q(ws.q);
            const fw::AtomicMeasure mu = fw::io::parse_measure(ws.mu);
            const fw::PathBatch batch =
                fw::run_paths(mu, ws.paths, ws.steps, ws.seed, q, ws.tail, ws.threads);
            auto out = open_out(ws.out);
            out << "path_index,final_word,stabilize_step\n";
            for (const auto& r : batch.rows)
                out << r.path_index << ',' << r.final_word.str() << ','
                    << (r.stabilize_step ? std::to_string(*r.stabilize_step) : "-1") << '\n';
            out << "# stabilized_fraction=" << fmt17(batch.stabilized_fraction) << '\n';
            return kExitOk;
        }

        // ---- walk stationary
        if (walk_stat->parsed()) {
            const fw::QParam q(wst.q);
            const fw::AtomicMeasure mu = fw::io::parse_measure(wst.mu);
            const auto starts = fw::io::parse_word_list(wst.starts);
            std::vector<fw::Cylinder> suffixes;
            for (const auto& w : fw::words_up_to(wst.suffixes_maxlen))
                suffixes.push_back(fw::Cylinder{w});
            auto out = open_out(wst.out);
            out << "start,gap,lost\n";
            for (const auto& s : starts) {
                const auto rep = fw::stationarity_report(fw::AtomicMeasure::point(s), mu, wst.n,
                                                         suffixes, q, wst.tracked);
                out << s.str() << ',' << fmt17(rep.gap) << ',' << fmt17(rep.lost) << '\n';
            }
            return kExitOk;
        }

        // ---- bounds
        if (bounds_est->parsed()) {
            std::cout << fmt17(fw::estimate_bound(fw::QParam(be.q), be.k)) << '\n';
            return kExitOk;
        }
        if (bounds_verify->parsed()) {
            const fw::QParam q(bv.q);
            auto out = open_out(bv.out);
            out << "trial,measured,bound,ok\n";
            bool all_ok = true;
            for (std::uint64_t t = 0; t < bv.trials; ++t) {
                const auto inst = fw::random_estimate_instance(q, bv.seed, t, bv.maxlen, bv.N);
                const auto chk = fw::verify_estimate(inst.lam, inst.y, inst.x_tail, inst.N, q);
                all_ok = all_ok && chk.ok;
                out << t << ',' << fmt17(chk.measured) << ',' << fmt17(chk.bound) << ','
                    << (chk.ok ? 1 : 0) << '\n';
            }
            return all_ok ? kExitOk : kExitNonConverged;
        }

        // ---- amen gamma-norm
        if (amen_gamma->parsed()) {
            const fw::QParam q(ag.q);
            fw::AmenabilityReport rep;
            if (ag.model == "auf") {
                const fw::AufSystem sys;
                rep = fw::amenability_gap(sys, fw::Word::parse(ag.U), q,
                                          fw::words_up_to(ag.trunc));
            } else {
                const fw::TemperleyLiebSystem sys{ag.model == "spin"};
                const int U = sys.parse_label(ag.U);
                if (!sys.valid(U)) throw std::invalid_argument("invalid label for model");
                rep = fw::amenability_gap(sys, U, q, tl_truncation(sys, ag.trunc));
            }
            auto out = open_out(ag.out);
            out << "model,q,U,truncation_size,norm,norm_residual,qdim,gap\n";
            out << rep.model << ',' << fmt17(rep.q) << ',' << rep.label << ','
                << rep.truncation_size << ',' << fmt17(rep.norm) << ','
                << fmt17(rep.norm_residual) << ',' << fmt17(rep.qdim) << ','
                << fmt17(rep.gap) << '\n';
            return rep.norm_residual <= 1e-9 ? kExitOk : kExitNonConverged;
        }

        // ---- amen mean
        if (amen_mean->parsed()) {
            if (am.model == "auf") {
                const fw::AufSystem sys;
                const fw::AtomicMeasure mu = fw::io::parse_measure(am.mu);
                std::vector<std::pair<fw::Word, double>> atoms(mu.atoms().begin(),
                                                               mu.atoms().end());
                return run_mean(sys, am, atoms, fw::words_up_to(am.trunc));
            }
            const fw::TemperleyLiebSystem sys{am.model == "spin"};
            return run_mean(sys, am, parse_int_measure(am.mu), tl_truncation(sys, am.trunc));
        }

        // ---- hamana
        if (h_min->parsed() || h_ces->parsed() || h_ce->parsed()) {
            const fw::io::FamilyDocument doc = fw::io::parse_family_file(hm.input);
            auto out = open_out(hm.out);
            if (h_ce->parsed()) {
                if (doc.operands.size() < 2)
                    throw std::invalid_argument("choieffros needs two operand blocks");
                const fw::Mat prod = fw::choi_effros_product(doc.matrices.front(),
                                                             doc.operands[0], doc.operands[1],
                                                             hm.tol);
                out << "product\n";
                fw::io::emit_matrix(out, prod, doc.complex_field);
                return kExitOk;
            }
            fw::IdempotentResult res;
            if (h_ces->parsed()) {
                res = fw::cesaro_idempotent(doc.matrices.front(), hm.tol);
            } else {
                const auto fam = fw::ContractionFamily::create(doc.matrices, doc.ucp);
                res = fw::minimal_idempotent(fam, hm.tol, hm.budget);
            }
            fw::io::emit_idempotent_result(out, res, doc.complex_field);
            return res.converged ? kExitOk : kExitNonConverged;
        }
    } catch (const std::exception& err) {
        std::cerr << "fusionwalk: " << err.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
