// xxz-lab: batch experiment runner for the hard-core XXZ laboratory.
//
// Subcommands: spectrum, entanglement-scan, ct-decay, ising-scan, ising-mc,
// cluster-geometry-check. Every run writes manifest.txt (resolved options,
// version, timestamp) plus one CSV per table into --out. Exit status is
// nonzero iff an assertive check failed; exploratory columns never affect
// it. Re-running with the same seed and config produces byte-identical CSV
// bodies at any worker count.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "xxz/cli_io.hpp"
#include "xxz/clusters.hpp"
#include "xxz/entanglement.hpp"
#include "xxz/graphs.hpp"
#include "xxz/hamiltonian.hpp"
#include "xxz/ising.hpp"
#include "xxz/parallel.hpp"
#include "xxz/rng.hpp"
#include "xxz/spectral.hpp"

namespace fs = std::filesystem;
using namespace xxz;
using cli::format_double;
using cli::format_int;
using hamiltonian::Anisotropy;
using hamiltonian::Field;
using hamiltonian::ModelParams;

namespace {

struct Common {
    std::string out;
    std::uint64_t seed = 1;
    int workers = 1;
};

void attach_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "output directory")->required();
    cmd->add_option("--seed", c.seed, "root seed for all random streams");
    cmd->add_option("--workers", c.workers, "worker threads; results are worker-count independent")
        ->check(CLI::Range(1, 256));
}

// Flat key=value config file; '#' starts a comment. Entries become command
// line flags, but only for flags not already given, so explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_file;
    for (std::size_t i = 0; i < args.size();) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::runtime_error("--config needs a file argument");
            config_file = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_file = args[i].substr(9);
            args.erase(args.begin() + i);
        } else {
            ++i;
        }
    }
    if (config_file.empty()) return args;
    std::ifstream in(config_file);
    if (!in) throw std::runtime_error("cannot open config file: " + config_file);
    auto trim = [](std::string s) {
        const char* ws = " \t\r";
        s.erase(0, s.find_first_not_of(ws));
        auto last = s.find_last_not_of(ws);
        s.erase(last == std::string::npos ? 0 : last + 1);
        return s;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(config_file + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        std::string key = "--" + trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == key || a.rfind(key + "=", 0) == 0;
        });
        if (!given) {
            args.push_back(key);
            args.push_back(value);
        }
    }
    return args;
}

fs::path prepare_out(const Common& c) {
    fs::path dir(c.out);
    fs::create_directories(dir);
    return dir;
}

Field parse_field(const std::string& spec, int sites, std::uint64_t seed) {
    if (spec == "zero") return Field::zero();
    if (spec == "random") {
        Rng rng = Rng::stream(seed, 0xF1E1DULL);
        Field f;
        for (int j = 1; j <= sites; ++j) f.set(j, rng.uniform());
        return f;
    }
    if (spec.rfind("csv:", 0) == 0) return Field::from_csv(spec.substr(4));
    throw CLI::ValidationError("--field", "expected zero, random or csv:PATH");
}

std::string pass_str(bool ok) { return ok ? "1" : "0"; }

std::vector<double> sector_eigenvalues(const hamiltonian::SectorOperator& op) {
    Eigen::VectorXd v = spectral::eigenvalues_only(op.matrix);
    return std::vector<double>(v.data(), v.data() + v.size());
}

// ---- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
    int chain = 8;
    int pad = 1;
    std::string delta = "2";
    std::string field = "zero";
    Common common;
};

bool run_spectrum(const SpectrumArgs& a) {
    auto dir = prepare_out(a.common);
    Anisotropy delta = Anisotropy::parse(a.delta);
    Field field = parse_field(a.field, a.chain, a.common.seed);
    ModelParams params{delta, field};
    auto sub = graphs::InducedSubgraph::chain(a.chain, a.pad);

    auto sectors = hamiltonian::build_full(sub, params);
    std::vector<double> all;
    cli::CsvWriter spec_csv(dir / "spectrum.csv", {"N", "index", "eigenvalue"});
    for (const auto& op : sectors) {
        auto ev = sector_eigenvalues(op);
        for (std::size_t i = 0; i < ev.size(); ++i) {
            spec_csv.row({format_int(op.particles()), format_int(static_cast<long long>(i)),
                          format_double(ev[i])});
            all.push_back(ev[i]);
        }
    }
    std::sort(all.begin(), all.end());

    bool ok = true;
    {
        // ground state at exactly zero, gap at least (1/2)(1 - 1/Delta)
        const double bound = 0.5 * delta.gap_unit();
        bool zero_simple = all[0] == 0.0 && (all.size() < 2 || all[1] > 1e-12);
        bool gapped = all.size() < 2 || all[1] >= bound - 1e-9;
        cli::CsvWriter checks(dir / "checks.csv", {"check", "value", "bound", "pass"});
        checks.row({"zero_simple", format_double(all[0]), "0", pass_str(zero_simple)});
        checks.row({"gap", format_double(all.size() < 2 ? bound : all[1]),
                    format_double(bound), pass_str(gapped)});
        ok = ok && zero_simple && gapped;

        if (a.chain <= 12) {
            Eigen::VectorXd ov =
                spectral::eigenvalues_only(hamiltonian::tensor_oracle(a.chain, params));
            double worst = 0.0;
            for (Eigen::Index i = 0; i < ov.size(); ++i)
                worst = std::max(worst, std::abs(ov(i) - all[i]));
            bool agree = worst <= 1e-10;
            checks.row({"tensor_oracle_max_diff", format_double(worst), format_double(1e-10),
                        pass_str(agree)});
            ok = ok && agree;
        }
    }

    cli::write_manifest(dir, "spectrum",
                        {{"chain", std::to_string(a.chain)},
                         {"pad", std::to_string(a.pad)},
                         {"delta", a.delta},
                         {"field", a.field},
                         {"seed", std::to_string(a.common.seed)},
                         {"workers", std::to_string(a.common.workers)}});
    return ok;
}

// ---- entanglement scan ------------------------------------------------------

struct EntanglementArgs {
    int chain = 12;
    int pad = 1;
    std::string delta = "2";
    double safety = 0.5;
    int ell_min = 3, ell_max = 6;
    std::vector<int> ks{1, 2};
    std::vector<double> alphas{0.1, 0.5, 0.9};
    int samples = 200;
    std::string field = "zero";
    bool bits = false;  // report entropies in bits instead of nats
    Common common;
};

bool run_entanglement_scan(const EntanglementArgs& a) {
    auto dir = prepare_out(a.common);
    if (a.ell_min < 1 || a.ell_max >= a.chain || a.ell_min > a.ell_max)
        throw CLI::ValidationError("--ell", "need 1 <= ell_min <= ell_max < L");
    Anisotropy delta = Anisotropy::parse(a.delta);
    Field field = parse_field(a.field, a.chain, a.common.seed);
    ModelParams params{delta, field};
    auto sub = graphs::InducedSubgraph::chain(a.chain, a.pad);

    auto sectors = hamiltonian::build_full(sub, params);
    std::vector<spectral::SpectralData> spectra;
    spectra.reserve(sectors.size());
    for (const auto& op : sectors) spectra.push_back(spectral::eigendecompose(op));

    cli::CsvWriter scan(dir / "scan.csv", {"L", "ell", "N_window", "K", "delta", "alpha",
                                           "sample_id", "entropy_vn", "entropy_renyi",
                                           "bound_rhs", "pass"});
    cli::CsvWriter trace(dir / "trace.csv", {"L", "ell", "K", "delta", "alpha", "sample_id",
                                             "trace_alpha", "bound_rhs", "pass"});
    cli::CsvWriter ratios(dir / "ratios.csv",
                          {"K", "ell", "max_entropy_vn", "log_ell", "ratio_over_2Kminus1"});

    bool ok = true;
    const double unit = a.bits ? std::log(2.0) : 1.0;  // output scaling only
    const int n_ells = a.ell_max - a.ell_min + 1;
    for (int big_k : a.ks) {
        const double emax = hamiltonian::threshold_energy(big_k + 1, delta) - a.safety;
        auto wb = entanglement::build_window_basis(sectors, spectra, emax);
        if (wb.rank() == 0) {
            std::cerr << "warning: empty window for K=" << big_k
                      << " (safety delta >= E_{K+1}); zero samples\n";
            continue;
        }
        auto states = entanglement::sample_window_states(
            wb, a.samples, a.common.seed + static_cast<std::uint64_t>(big_k) * 0x9e37ULL);

        // reduced spectra per state and cut position, in parallel
        std::vector<std::vector<Eigen::VectorXd>> lams(states.size());
        parallel_for_index(states.size(), a.common.workers, [&](std::size_t s) {
            lams[s].resize(n_ells);
            for (int e = 0; e < n_ells; ++e) {
                auto r = entanglement::reduced_density_matrix(states[s], a.ell_min + e, a.chain);
                lams[s][e] = entanglement::reduced_spectrum(r);
            }
        });

        for (int e = 0; e < n_ells; ++e) {
            const int ell = a.ell_min + e;
            double max_vn = 0.0;
            for (double alpha : a.alphas) {
                const double bound6 =
                    entanglement::renyi_entropy_bound(alpha, big_k, ell, a.safety, delta);
                const auto bound5 =
                    entanglement::trace_alpha_bound_rhs(alpha, big_k, a.safety, delta, ell);
                for (std::size_t s = 0; s < states.size(); ++s) {
                    const long long sample_id = static_cast<long long>(s) - 1;
                    double vn = entanglement::von_neumann_entropy_from_spectrum(lams[s][e]);
                    double ren = entanglement::renyi_entropy_from_spectrum(lams[s][e], alpha);
                    double tra = entanglement::trace_alpha_from_spectrum(lams[s][e], alpha);
                    bool pass6 = ren <= bound6 + 1e-9;
                    bool pass5 = !bound5.exact || tra <= bound5.value + 1e-9;
                    max_vn = std::max(max_vn, vn);
                    scan.row({format_int(a.chain), format_int(ell), format_int(wb.rank()),
                              format_int(big_k), format_double(a.safety), format_double(alpha),
                              format_int(sample_id), format_double(vn / unit),
                              format_double(ren / unit), format_double(bound6 / unit),
                              pass_str(pass6 && pass5)});
                    trace.row({format_int(a.chain), format_int(ell), format_int(big_k),
                               format_double(a.safety), format_double(alpha),
                               format_int(sample_id), format_double(tra),
                               format_double(bound5.value), pass_str(pass5)});
                    ok = ok && pass6 && pass5;
                }
            }
            ratios.row({format_int(big_k), format_int(ell), format_double(max_vn),
                        format_double(std::log(ell)),
                        format_double(max_vn / std::log(ell) / (2.0 * big_k - 1.0))});
        }
    }

    cli::write_manifest(dir, "entanglement-scan",
                        {{"chain", std::to_string(a.chain)},
                         {"pad", std::to_string(a.pad)},
                         {"delta", a.delta},
                         {"safety_delta", format_double(a.safety)},
                         {"ell_min", std::to_string(a.ell_min)},
                         {"ell_max", std::to_string(a.ell_max)},
                         {"samples", std::to_string(a.samples)},
                         {"field", a.field},
                         {"bits", a.bits ? "1" : "0"},
                         {"seed", std::to_string(a.common.seed)},
                         {"workers", std::to_string(a.common.workers)}});
    return ok;
}

// ---- resolvent / projection decay sweeps ------------------------------------

struct CtArgs {
    int chain = 10;
    int pad = 1;
    std::string delta = "2";
    std::vector<int> particles{3};
    std::vector<int> ks{2};
    std::vector<double> safeties{0.5};
    std::vector<double> epss{0.0, 0.1, 1.0};
    std::string field = "zero";
    Common common;
};

bool run_ct_decay(const CtArgs& a) {
    auto dir = prepare_out(a.common);
    Anisotropy delta = Anisotropy::parse(a.delta);
    Field field = parse_field(a.field, a.chain, a.common.seed);
    ModelParams params{delta, field};
    auto sub = graphs::InducedSubgraph::chain(a.chain, a.pad);

    cli::CsvWriter main_csv(dir / "ct_decay.csv",
                            {"N", "K", "delta", "dist", "lhs", "rhs", "pass"});
    cli::CsvWriter abstract_csv(dir / "ct_abstract.csv",
                                {"N", "z", "dist", "lhs", "rhs", "pass"});
    cli::CsvWriter projected_csv(
        dir / "ct_projected.csv",
        {"N", "K", "delta", "eps", "dist", "lhs", "rhs", "pass"});

    bool ok = true;
    int skipped = 0;
    for (int n : a.particles) {
        auto op = hamiltonian::build_sector(sub, n, params);
        auto decomp = spectral::decompose_sector(op);
        const int d_min = spectral::sector_min_degree(op);

        // plain resolvent decay below the spectrum
        const double emin = spectral::eigenvalues_only(op.matrix).minCoeff();
        for (double off : {0.5, 2.0}) {
            double z = emin - off;
            for (const auto& row : spectral::sweep_resolvent_decay(decomp, z)) {
                abstract_csv.row({format_int(n), format_double(z), format_int(row.distance),
                                  format_double(row.lhs_max), format_double(row.rhs),
                                  pass_str(row.pass)});
                ok = ok && row.pass;
            }
        }

        for (int k : a.ks) {
            const double e_cut = hamiltonian::sector_cut_energy(d_min, k, delta);
            for (double safety : a.safeties) {
                const double energy = e_cut - safety;
                // degree-cut sector sweep, aggregated over eps
                std::map<int, spectral::SweepRow> merged;
                for (double eps : a.epss) {
                    for (const auto& row :
                         spectral::sweep_sector_resolvent_decay(op, k, safety, energy, eps)) {
                        auto& m = merged[row.distance];
                        m.distance = row.distance;
                        m.lhs_max = std::max(m.lhs_max, row.lhs_max);
                        m.rhs = row.rhs;
                        m.pairs += row.pairs;
                        m.pass = m.lhs_max <= m.rhs + 1e-9;
                    }
                }
                for (const auto& [dist, row] : merged) {
                    main_csv.row({format_int(n), format_int(k), format_double(safety),
                                  format_int(dist), format_double(row.lhs_max),
                                  format_double(row.rhs), pass_str(row.pass)});
                    ok = ok && row.pass;
                }

                // potential-cut sweep when its preconditions hold
                const double k_cut = 0.5 * (d_min + k);
                const double delta_prime = safety / delta.gap_unit();
                const double e_proj = (1.0 - decomp.c * decomp.g) * (k_cut - delta_prime);
                const double w0 = decomp.potential.minCoeff();
                if (w0 < k_cut - delta_prime && decomp.g < 1.0 / decomp.c) {
                    for (double eps : a.epss) {
                        for (const auto& row : spectral::sweep_projected_resolvent_decay(
                                 decomp, e_proj, eps, k_cut, delta_prime)) {
                            projected_csv.row(
                                {format_int(n), format_int(k), format_double(safety),
                                 format_double(eps), format_int(row.distance),
                                 format_double(row.lhs_max), format_double(row.rhs),
                                 pass_str(row.pass)});
                            ok = ok && row.pass;
                        }
                    }
                } else {
                    ++skipped;
                }
            }
        }
    }
    if (skipped)
        std::cerr << "note: " << skipped
                  << " potential-cut sweeps skipped (preconditions not satisfied)\n";

    std::ostringstream parts, kss, saf, eps;
    for (int n : a.particles) parts << n << " ";
    for (int k : a.ks) kss << k << " ";
    for (double s : a.safeties) saf << s << " ";
    for (double e : a.epss) eps << e << " ";
    cli::write_manifest(dir, "ct-decay",
                        {{"chain", std::to_string(a.chain)},
                         {"pad", std::to_string(a.pad)},
                         {"delta", a.delta},
                         {"particles", parts.str()},
                         {"k", kss.str()},
                         {"safety_delta", saf.str()},
                         {"eps", eps.str()},
                         {"field", a.field},
                         {"seed", std::to_string(a.common.seed)},
                         {"workers", std::to_string(a.common.workers)}});
    return ok;
}

// ---- ising scan --------------------------------------------------------------

struct IsingScanArgs {
    int kmax = 3;
    int lmax = 200;
    Common common;
};

bool run_ising_scan(const IsingScanArgs& a) {
    auto dir = prepare_out(a.common);
    if (a.kmax < 1 || a.kmax > 4 || a.lmax < 1 || a.lmax > 500)
        throw CLI::ValidationError("--kmax/--lmax", "supported ranges: K <= 4, ell <= 500");
    cli::CsvWriter csv(dir / "ising_scan.csv", {"K", "ell", "exact_count", "closed_form",
                                                "entropy", "bound_2Kminus1_ratio"});
    bool ok = true;
    for (int k = 1; k <= a.kmax; ++k) {
        for (int ell = std::max(2, 2 * k - 1); ell <= a.lmax; ++ell) {
            long long exact = ising::count_exact(k, ell);
            long long closed = ising::count_closed_form_oracle(k, ell);
            ok = ok && exact == closed;
            double entropy = std::log(static_cast<double>(ising::n_kell(k, ell)) + 1.0);
            double ratio = entropy / std::log(static_cast<double>(ell)) / (2.0 * k - 1.0);
            csv.row({format_int(k), format_int(ell), format_int(exact), format_int(closed),
                     format_double(entropy), format_double(ratio)});
        }
    }
    cli::write_manifest(dir, "ising-scan",
                        {{"kmax", std::to_string(a.kmax)},
                         {"lmax", std::to_string(a.lmax)},
                         {"seed", std::to_string(a.common.seed)},
                         {"workers", std::to_string(a.common.workers)}});
    return ok;
}

// ---- ising Monte Carlo --------------------------------------------------------

struct IsingMcArgs {
    int k = 1;
    std::vector<int> ells{50};
    double p = 0.5;
    long long samples = 100000;
    Common common;
};

bool run_ising_mc(const IsingMcArgs& a) {
    auto dir = prepare_out(a.common);
    if (!(a.p >= 0.0 && a.p < 1.0)) throw CLI::ValidationError("--p", "need 0 <= p < 1");
    if (a.samples < 100) throw CLI::ValidationError("--samples", "need at least 100 samples");
    cli::CsvWriter csv(dir / "ising_mc.csv",
                       {"K", "ell", "p", "samples", "mean", "exact_mean", "variance",
                        "var_over_l_2Km1", "seed"});
    bool ok = true;
    for (int ell : a.ells) {
        auto m = ising::q_moments_mc(a.k, ell, a.p, a.samples, a.common.seed, a.common.workers);
        double exact = ising::q_expectation_exact(a.k, ell, a.p);
        bool pass = std::abs(m.mean - exact) <= 3.0 * m.stderr_mean;
        ok = ok && pass;
        csv.row({format_int(a.k), format_int(ell), format_double(a.p), format_int(a.samples),
                 format_double(m.mean), format_double(exact), format_double(m.variance),
                 format_double(m.variance / std::pow(ell, 2.0 * a.k - 1.0)),
                 format_int(static_cast<long long>(a.common.seed))});
        if (!pass)
            std::cerr << "ising-mc: mean " << m.mean << " deviates from exact " << exact
                      << " by more than 3 standard errors\n";
    }
    std::ostringstream ells;
    for (int e : a.ells) ells << e << " ";
    cli::write_manifest(dir, "ising-mc",
                        {{"k", std::to_string(a.k)},
                         {"l", ells.str()},
                         {"p", format_double(a.p)},
                         {"samples", std::to_string(a.samples)},
                         {"seed", std::to_string(a.common.seed)},
                         {"workers", std::to_string(a.common.workers)}});
    return ok;
}

// ---- cluster geometry ----------------------------------------------------------

struct GeometryArgs {
    int nmax = 5;
    int site_max = 9;
    int kmax = 3;
    int ell = 6;
    int chain_l = 10;
    long long randoms = 10000;
    Common common;
};

bool run_cluster_geometry(const GeometryArgs& a) {
    auto dir = prepare_out(a.common);
    cli::CsvWriter csv(dir / "cluster_geometry.csv", {"check", "instances", "failures"});
    bool ok = true;

    std::vector<int> sites;
    for (int s = 1; s <= a.site_max; ++s) sites.push_back(s);

    long long droplet_n = 0, droplet_f = 0;
    long long kcluster_n = 0, kcluster_f = 0;
    for (int n = 1; n <= a.nmax; ++n) {
        graphs::detail::for_each_subset(sites, n, [&](const graphs::Configuration& x) {
            auto fast = clusters::closest_droplets(x);
            auto slow = clusters::closest_droplets_bruteforce(x);
            ++droplet_n;
            bool same = fast.distance == slow.distance &&
                        fast.minimizers.size() == slow.minimizers.size();
            if (same)
                for (std::size_t i = 0; i < fast.minimizers.size(); ++i)
                    same = same && fast.minimizers[i].expand() == slow.minimizers[i].expand();
            if (!same) ++droplet_f;
            for (int k = 1; k <= std::min(a.kmax, n); ++k) {
                ++kcluster_n;
                auto r = clusters::closest_k_cluster(x, k);
                if (r.distance != clusters::closest_k_cluster_bruteforce(x, k) ||
                    clusters::chain_distance(x, r.decomposition.realized) != r.distance)
                    ++kcluster_f;
            }
        });
    }
    csv.row({"closest_droplets_vs_bruteforce", format_int(droplet_n), format_int(droplet_f)});
    csv.row({"closest_k_cluster_vs_bruteforce", format_int(kcluster_n), format_int(kcluster_f)});
    ok = ok && droplet_f == 0 && kcluster_f == 0;

    // attachment identity and monotonicity in the attached particle count
    long long attach_n = 0, attach_f = 0, mono_n = 0, mono_f = 0;
    std::vector<int> left;
    for (int s = 1; s <= a.ell; ++s) left.push_back(s);
    for (int j = 1; j <= a.ell - 1; ++j) {
        graphs::detail::for_each_subset(left, j, [&](const graphs::Configuration& y) {
            for (int big_k = 1; big_k <= a.kmax; ++big_k) {
                int prev = -1;
                for (int k = 1; k <= a.chain_l - j; ++k) {
                    int fast = clusters::attachment_distance(y, k, big_k, a.ell, a.chain_l);
                    if (k <= a.chain_l - a.ell) {
                        ++attach_n;
                        if (fast != clusters::attachment_distance_bruteforce(y, k, big_k, a.ell,
                                                                             a.chain_l))
                            ++attach_f;
                    }
                    ++mono_n;
                    if (prev >= 0 && fast < prev) ++mono_f;
                    prev = fast;
                }
            }
        });
    }
    csv.row({"attachment_identity_vs_bruteforce", format_int(attach_n), format_int(attach_f)});
    csv.row({"attachment_monotone_in_k", format_int(mono_n), format_int(mono_f)});
    ok = ok && attach_f == 0 && mono_f == 0;

    // right-shift inequality on random multi-cluster configurations
    long long shift_n = 0, shift_f = 0;
    for (long long i = 0; i < a.randoms; ++i) {
        Rng rng = Rng::stream(a.common.seed, static_cast<std::uint64_t>(i));
        int n = 2 + static_cast<int>(rng.below(5));
        std::set<int> s;
        while (static_cast<int>(s.size()) < n) s.insert(1 + static_cast<int>(rng.below(13)));
        graphs::Configuration x(s.begin(), s.end());
        int cl = clusters::cluster_count(x);
        if (cl < 2) continue;
        for (int big_k = 1; big_k <= cl; ++big_k) {
            ++shift_n;
            if (!clusters::right_shift_check(x, big_k)) ++shift_f;
        }
    }
    csv.row({"right_shift_never_increases", format_int(shift_n), format_int(shift_f)});
    ok = ok && shift_f == 0;

    cli::write_manifest(dir, "cluster-geometry-check",
                        {{"nmax", std::to_string(a.nmax)},
                         {"site_max", std::to_string(a.site_max)},
                         {"kmax", std::to_string(a.kmax)},
                         {"ell", std::to_string(a.ell)},
                         {"chain_l", std::to_string(a.chain_l)},
                         {"random", std::to_string(a.randoms)},
                         {"seed", std::to_string(a.common.seed)},
                         {"workers", std::to_string(a.common.workers)}});
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hard-core XXZ chain laboratory"};
    app.require_subcommand(1);

    SpectrumArgs sp;
    auto* c_sp = app.add_subcommand("spectrum", "sector spectra and oracle equivalence");
    c_sp->add_option("--chain", sp.chain, "chain length L")->required()->check(CLI::Range(1, 14));
    c_sp->add_option("--pad", sp.pad, "embedding padding")->check(CLI::Range(1, 8));
    c_sp->add_option("--delta", sp.delta, "anisotropy (> 1 or 'inf')");
    c_sp->add_option("--field", sp.field, "zero | random | csv:PATH");
    attach_common(c_sp, sp.common);

    EntanglementArgs en;
    auto* c_en = app.add_subcommand("entanglement-scan",
                                    "window states against the Renyi/entropy bounds");
    c_en->add_option("--chain", en.chain, "chain length L")->check(CLI::Range(2, 14));
    c_en->add_option("--pad", en.pad, "embedding padding")->check(CLI::Range(1, 8));
    c_en->add_option("--delta", en.delta, "anisotropy (> 1 or 'inf')");
    c_en->add_option("--safety-delta", en.safety, "distance below the break-up threshold")
        ->check(CLI::PositiveNumber);
    c_en->add_option("--ell-min", en.ell_min, "smallest cut position");
    c_en->add_option("--ell-max", en.ell_max, "largest cut position");
    c_en->add_option("--K", en.ks, "cluster numbers K")->delimiter(',');
    c_en->add_option("--alpha", en.alphas, "Renyi orders in (0,1)")->delimiter(',');
    c_en->add_option("--samples", en.samples, "random window states per K")
        ->check(CLI::Range(1, 1000000));
    c_en->add_option("--field", en.field, "zero | random | csv:PATH");
    c_en->add_flag("--bits", en.bits, "report entropies in bits instead of nats");
    attach_common(c_en, en.common);

    CtArgs ct;
    auto* c_ct = app.add_subcommand("ct-decay", "resolvent and projected-resolvent decay");
    c_ct->add_option("--chain", ct.chain, "chain length L")->check(CLI::Range(2, 14));
    c_ct->add_option("--pad", ct.pad, "embedding padding")->check(CLI::Range(1, 8));
    c_ct->add_option("--delta", ct.delta, "anisotropy (> 1 or 'inf')");
    c_ct->add_option("--particles", ct.particles, "particle numbers N")->delimiter(',');
    c_ct->add_option("--k", ct.ks, "degree-cut offsets k")->delimiter(',');
    c_ct->add_option("--safety-delta", ct.safeties, "distances below the cut energy")
        ->delimiter(',');
    c_ct->add_option("--eps", ct.epss, "imaginary offsets")->delimiter(',');
    c_ct->add_option("--field", ct.field, "zero | random | csv:PATH");
    attach_common(c_ct, ct.common);

    IsingScanArgs is;
    auto* c_is = app.add_subcommand("ising-scan", "cluster-subset counts and window entropies");
    c_is->add_option("--kmax", is.kmax, "largest cluster number");
    c_is->add_option("--lmax", is.lmax, "largest interval length");
    attach_common(c_is, is.common);

    IsingMcArgs mc;
    auto* c_mc = app.add_subcommand("ising-mc", "Monte-Carlo cluster-subset moments");
    c_mc->add_option("--k", mc.k, "cluster number K")->check(CLI::Range(1, 4));
    c_mc->add_option("--l", mc.ells, "interval lengths")->delimiter(',');
    c_mc->add_option("--p", mc.p, "site inclusion probability");
    c_mc->add_option("--samples", mc.samples, "Monte-Carlo samples");
    attach_common(c_mc, mc.common);

    GeometryArgs ge;
    auto* c_ge = app.add_subcommand("cluster-geometry-check",
                                    "closest-droplet and k-cluster constructions vs brute force");
    c_ge->add_option("--nmax", ge.nmax, "largest particle number");
    c_ge->add_option("--site-max", ge.site_max, "sites range [1,site-max]");
    c_ge->add_option("--kmax", ge.kmax, "largest cluster number");
    c_ge->add_option("--ell", ge.ell, "cut position for attachment sweeps");
    c_ge->add_option("--chain-l", ge.chain_l, "chain length for attachment sweeps");
    c_ge->add_option("--random", ge.randoms, "random instances for the shift inequality");
    attach_common(c_ge, ge.common);

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes in reverse
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        bool ok = true;
        if (c_sp->parsed()) ok = run_spectrum(sp);
        if (c_en->parsed()) ok = run_entanglement_scan(en);
        if (c_ct->parsed()) ok = run_ct_decay(ct);
        if (c_is->parsed()) ok = run_ising_scan(is);
        if (c_mc->parsed()) ok = run_ising_mc(mc);
        if (c_ge->parsed()) ok = run_cluster_geometry(ge);
        if (!ok) {
            std::cerr << "one or more assertive checks failed\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
