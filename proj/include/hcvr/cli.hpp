#pragma once

// Command-line front end. run() parses argv, dispatches, and returns the exit
// code: 0 ok, 1 usage, 2 capability limit, 3 verification failure.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcvr/bounds.hpp"
#include "hcvr/errors.hpp"
#include "hcvr/generators.hpp"
#include "hcvr/geometric.hpp"
#include "hcvr/homology.hpp"
#include "hcvr/hypercube.hpp"
#include "hcvr/io.hpp"
#include "hcvr/rips.hpp"

#ifndef HCVR_DEFAULT_SEEDS
#define HCVR_DEFAULT_SEEDS "data/seeds.json"
#endif

namespace hcvr::cli {

enum exit_code : int { ok = 0, usage = 1, capability = 2, verification_failed = 3 };

struct RunConfig {
    std::string command;
    std::string suite;
    int n = -1, r = -1, q = -1, q_max = -1, r_prime = -1, m = -1, p = -1;
    int n_max = -1, compare_n_max = -1, n_budget = -1;
    int dim_cap = -1, dim_floor = 0;
    unsigned field = 2;
    unsigned threads = 1;
    std::uint64_t budget = budget_from_environment();
    std::uint64_t clique_budget = default_clique_budget;
    std::string format = "text";
    std::string seeds = HCVR_DEFAULT_SEEDS;
    bool compare = false;
    bool quiet = false;
};

namespace detail {

struct Checks {
    std::string suite;
    struct Item {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Item> items;

    void add(std::string name, bool pass, std::string detail = {})
    {
        items.push_back({std::move(name), pass, std::move(detail)});
    }
    bool all() const
    {
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
    int emit(std::ostream& out, const std::string& format) const
    {
        if (format == "json") {
            auto arr = nlohmann::json::array();
            for (const auto& i : items) arr.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
            out << nlohmann::json{{"suite", suite}, {"checks", arr}, {"pass", all()}}.dump(2) << '\n';
        } else {
            for (const auto& i : items)
                out << (i.pass ? "PASS " : "FAIL ") << i.name << (i.detail.empty() ? "" : ": " + i.detail) << '\n';
            out << (all() ? "all " : "some ") << suite << " checks " << (all() ? "passed" : "FAILED") << '\n';
        }
        return all() ? ok : verification_failed;
    }
};

inline HomologyOptions homology_options(const RunConfig& cfg, std::ostream& err)
{
    HomologyOptions opt;
    opt.field = PrimeField(cfg.field);
    opt.budget = cfg.budget;
    opt.threads = cfg.threads;
    if (!cfg.quiet) opt.progress = [&err](const std::string& msg) { err << "[hcvr] " << msg << std::endl; };
    return opt;
}

inline void need(bool ok, const std::string& what)
{
    if (!ok) throw usage_error(what);
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ")
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

// -- commands ---------------------------------------------------------------------------

inline int cmd_betti(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    need(cfg.n >= 1 && cfg.r >= 0 && cfg.q >= 0, "betti needs --n >= 1, --r >= 0 and --q >= 0");
    const int q_hi = cfg.q_max < 0 ? cfg.q : cfg.q_max;
    need(q_hi >= cfg.q, "--q-max must be at least --q");
    const auto results = betti_range(cfg.n, cfg.r, cfg.q, q_hi, homology_options(cfg, err));
    if (cfg.format == "json") {
        auto arr = nlohmann::json::array();
        for (const auto& b : results) arr.push_back(to_json(b));
        out << (results.size() == 1 ? arr.front() : arr).dump(2) << '\n';
    } else if (cfg.format == "csv") {
        write_betti_csv_header(out);
        for (const auto& b : results) write_betti_csv(out, b);
    } else {
        for (const auto& b : results) {
            out << "betti = " << b.betti << "  (n=" << b.n << " r=" << b.r << " q=" << b.q << " field=Z/" << b.field
                << (b.q == 0 ? ", unreduced: counts components" : "") << "; simplices in dims q-1,q,q+1: "
                << b.count_below << ' ' << b.count_at << ' ' << b.count_above << "; rank d_q=" << b.rank_q
                << " rank d_q+1=" << b.rank_above << "; " << std::fixed << std::setprecision(1) << b.millis
                << " ms)\n";
            out.unsetf(std::ios::floatfield);
        }
    }
    return ok;
}

inline int cmd_induced(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    need(cfg.n >= 1 && cfg.r >= 0 && cfg.q >= 0 && cfg.p >= 1 && cfg.p <= cfg.n,
         "induced needs --n, --r, --q and 1 <= --p <= n");
    const auto opt = homology_options(cfg, err);
    const auto rank = induced_map_rank(all_subcubes(cfg.n, cfg.p), cfg.n, cfg.r, cfg.q, opt);
    if (cfg.format == "json")
        out << nlohmann::json{{"n", cfg.n}, {"r", cfg.r}, {"q", cfg.q}, {"p", cfg.p}, {"rank", rank}}.dump(2) << '\n';
    else
        out << "rank = " << rank << "  (H_" << cfg.q << " of all " << cfg.p << "-subcubes into VR(Q_" << cfg.n << ";"
            << cfg.r << "))\n";
    return ok;
}

inline int cmd_quotient(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    need(cfg.n >= 1 && cfg.r >= 0 && cfg.q >= 0 && cfg.m >= 1, "quotient needs --n, --r, --q and --m");
    const auto rank = quotient_rank(cfg.n, cfg.r, cfg.q, cfg.m, homology_options(cfg, err));
    if (cfg.format == "json")
        out << nlohmann::json{{"n", cfg.n}, {"r", cfg.r}, {"q", cfg.q}, {"m", cfg.m}, {"rank", rank}}.dump(2) << '\n';
    else
        out << "rank = " << rank << "  (H_" << cfg.q << "(VR(Q_" << cfg.n << ";" << cfg.r << ")) modulo the "
            << cfg.m - 1 << "-subcubes)\n";
    return ok;
}

inline int cmd_scale(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    need(cfg.n >= 1 && cfg.r >= 0 && cfg.r_prime >= cfg.r && cfg.q >= 0, "scale needs --n, --r <= --r-prime, --q");
    const auto rank = scale_inclusion_rank(cfg.n, cfg.r, cfg.r_prime, cfg.q, homology_options(cfg, err));
    if (cfg.format == "json")
        out << nlohmann::json{{"n", cfg.n}, {"r", cfg.r}, {"r_prime", cfg.r_prime}, {"q", cfg.q}, {"rank", rank}}.dump(2)
            << '\n';
    else
        out << "rank = " << rank << "\n";
    return ok;
}

inline int cmd_skeleton(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    need(cfg.n >= 1 && cfg.r >= 0 && cfg.dim_cap >= 0, "skeleton needs --n, --r and --dim-cap");
    BuildOptions bo;
    bo.dim_floor = cfg.dim_floor;
    bo.budget = cfg.budget;
    bo.threads = cfg.threads;
    const auto k = build_skeleton(cfg.n, cfg.r, cfg.dim_cap, bo);
    if (cfg.format == "json") {
        auto counts = nlohmann::json::object();
        for (int d = k.dim_floor(); d <= k.dim_cap(); ++d) counts[std::to_string(d)] = k.count(d);
        out << nlohmann::json{{"n", cfg.n}, {"r", cfg.r}, {"counts", counts}}.dump(2) << '\n';
    } else {
        dump_skeleton(out, k);
    }
    return ok;
}

inline int cmd_family(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    need(cfg.n >= 1 && cfg.r >= 2, "family needs --n and --r >= 2");
    const auto fam = build_family(cfg.n, cfg.r, cfg.budget, cfg.threads);
    if (cfg.format == "json") {
        auto arr = nlohmann::json::array();
        for (const auto& g : fam.entries)
            arr.push_back({{"coords", Vertex::to_binary(g.embedding.coords(), cfg.n)},
                           {"offset", Vertex::to_binary(g.embedding.offset(), cfg.n)},
                           {"sigma", g.sigma.str(cfg.n)},
                           {"support", g.cycle.support_size()}});
        out << arr.dump(2) << '\n';
    } else {
        dump_family(out, fam);
    }
    return ok;
}

inline int cmd_center(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    need(cfg.n >= 1 && cfg.r >= 0, "center needs --n and --r");
    const auto c = center_coverable(cfg.n, cfg.r, cfg.clique_budget);
    if (cfg.format == "json") {
        out << to_json(c).dump(2) << '\n';
    } else {
        out << to_string(c.status) << " (" << c.certificate << ")";
        if (c.status == Coverage::coverable) {
            std::vector<std::string> w;
            for (std::size_t i = 0; i < c.witness.size(); ++i)
                w.push_back(c.witness[i].str() + ":" + fraction(c.weights[i]));
            out << " witness " << join(w, " ") << (c.balanced ? " (balanced)" : "");
        }
        out << '\n';
    }
    return c.status == Coverage::indeterminate ? capability : ok;
}

inline std::vector<BoundRecord> rows_for(const RunConfig& cfg)
{
    need(cfg.r >= 0, "table needs --r");
    const int n_max = cfg.n_max < 0 ? 12 : cfg.n_max;
    return table(cfg.r, n_max, load_seeds(cfg.seeds));
}

inline int desk_scale_n(int r)
{
    switch (r) {
    case 0: return 8;
    case 1: return 8;
    case 2: return 6;
    case 3: return 5;
    default: return r + 1;
    }
}

inline int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto rows = rows_for(cfg);
    std::vector<std::optional<std::uint64_t>> exact(rows.size());
    if (cfg.compare) {
        const int cap = cfg.compare_n_max < 0 ? desk_scale_n(cfg.r) : cfg.compare_n_max;
        const auto opt = homology_options(cfg, err);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].n > cap) continue;
            try {
                exact[i] = betti(rows[i].n, rows[i].r, rows[i].q, opt).betti;
            } catch (const capability_error& e) {
                if (!cfg.quiet) err << "[hcvr] skipped n=" << rows[i].n << " q=" << rows[i].q << ": " << e.what() << '\n';
            }
        }
    }
    bool consistent = true;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (exact[i] && bigint(*exact[i]) < rows[i].value) consistent = false;

    if (cfg.format == "json") {
        auto arr = nlohmann::json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto j = to_json(rows[i]);
            if (cfg.compare) j["betti"] = exact[i] ? nlohmann::json(*exact[i]) : nlohmann::json();
            arr.push_back(j);
        }
        out << arr.dump(2) << '\n';
    } else if (cfg.format == "markdown") {
        write_table_markdown(out, cfg.r, rows);
        if (cfg.compare) {
            out << "\n| n | q | bound | betti |\n|---|---|---|---|\n";
            for (std::size_t i = 0; i < rows.size(); ++i)
                out << "| " << rows[i].n << " | " << rows[i].q << " | " << rows[i].value << " | "
                    << (exact[i] ? std::to_string(*exact[i]) : std::string("-")) << " |\n";
        }
    } else {
        if (!cfg.compare) {
            write_table_csv(out, rows);
        } else {
            out << "n,r,q,bound,decomposition,sources,betti\n";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& b = rows[i];
                out << b.n << ',' << b.r << ',' << b.q << ',' << b.value << ",\"" << b.decomposition() << "\","
                    << join_sources(b) << ',' << (exact[i] ? std::to_string(*exact[i]) : std::string()) << '\n';
            }
        }
    }
    return consistent ? ok : verification_failed;
}

// -- verification suites -----------------------------------------------------------------

inline int verify_contractions(const RunConfig& cfg, std::ostream& out)
{
    const int n_max = cfg.n_max < 0 ? 5 : cfg.n_max;
    need(n_max >= 1, "--n-max must be positive");
    Checks c{"contractions", {}};
    for (int n = 1; n <= n_max; ++n) {
        std::size_t count = 0;
        std::string bad;
        for (int p = 1; p <= n; ++p)
            for (const auto& e : all_subcubes(n, p)) {
                ++count;
                auto rep = check_contraction([&](const Vertex& y) { return project_onto(e, y); }, n,
                                             VertexSet(n, e.members()), cfg.threads);
                if (!rep.ok && bad.empty()) bad = rep.reason;
            }
        c.add("subcube retractions n=" + std::to_string(n), bad.empty(),
              bad.empty() ? std::to_string(count) + " retractions are 1-Lipschitz and fix their subcube" : bad);
        if (n < 2) continue;
        count = 0;
        bad.clear();
        for (int k = 1; k < n; ++k)
            for (word_t tail = 0; tail < (word_t{1} << (n - k)); ++tail) {
                const ConcentrationSpec spec(n, k, tail << k);
                ++count;
                auto rep = check_contraction([&](const Vertex& y) { return concentrate(spec, y); }, n,
                                             VertexSet(n, spec.target().members()), cfg.threads);
                if (!rep.ok && bad.empty()) bad = rep.reason;
            }
        c.add("concentrations n=" + std::to_string(n), bad.empty(),
              bad.empty() ? std::to_string(count) + " concentration maps are contractions" : bad);
    }
    return c.emit(out, cfg.format);
}

inline int verify_generators(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::vector<std::pair<int, int>> cases;
    if (cfg.n > 0 || cfg.r > 0) {
        need(cfg.n > 0 && cfg.r >= 2, "generators suite needs --n and --r >= 2 together");
        cases.emplace_back(cfg.n, cfg.r);
    } else {
        cases = {{3, 2}, {4, 2}, {5, 2}, {4, 3}};
    }
    Checks c{"generators", {}};
    const auto opt = homology_options(cfg, err);
    for (auto [n, r] : cases) {
        const std::string tag = "(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
        const auto fam = build_family(n, r, cfg.budget, cfg.threads);
        const auto rep = family_rank(fam, opt);
        const auto expected = bound_cross_polytope(n, r).value;
        c.add("family size " + tag, bigint(fam.size()) == expected,
              std::to_string(fam.size()) + " generators, formula gives " + expected.str());
        c.add("cycles closed " + tag, rep.cycles_closed, "boundary of every cross-polytopal cycle vanishes");
        c.add("sigmas maximal " + tag, rep.sigmas_maximal);
        c.add("pairing matrix " + tag, rep.pairing_identity, rep.pairing_identity ? "identity" : rep.note);
        if (rep.rank_checked)
            c.add("rank modulo boundaries " + tag, rep.rank == fam.size(), "rank " + std::to_string(rep.rank));
        else
            c.add("rank modulo boundaries " + tag, true, "skipped: " + rep.note);
    }
    return c.emit(out, cfg.format);
}

inline int verify_scale(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    struct Case {
        int n, r, rp, q;
    };
    std::vector<Case> cases;
    if (cfg.n > 0) {
        need(cfg.r >= 0 && cfg.r_prime > cfg.r && cfg.q >= 1, "scale-inclusions needs --n --r --r-prime > r --q >= 1");
        cases.push_back({cfg.n, cfg.r, cfg.r_prime, cfg.q});
    } else {
        cases = {{3, 1, 2, 1}, {4, 1, 2, 1}, {5, 1, 2, 1}, {4, 2, 3, 3}, {5, 2, 3, 3}, {5, 1, 3, 1}};
    }
    Checks c{"scale-inclusions", {}};
    const auto opt = homology_options(cfg, err);
    for (const auto& k : cases) {
        const auto src = betti(k.n, k.r, k.q, opt).betti;
        const auto rank = scale_inclusion_rank(k.n, k.r, k.rp, k.q, opt);
        c.add("H_" + std::to_string(k.q) + "(VR(Q_" + std::to_string(k.n) + ";" + std::to_string(k.r) + ")) -> r'=" +
                  std::to_string(k.rp),
              rank == 0, "rank " + std::to_string(rank) + " from a group of rank " + std::to_string(src));
    }
    return c.emit(out, cfg.format);
}

inline int verify_bounds_vs_betti(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::vector<int> rs;
    if (cfg.r >= 0)
        rs.push_back(cfg.r);
    else
        rs = {1, 2, 3};
    const auto seeds = load_seeds(cfg.seeds);
    const auto opt = homology_options(cfg, err);
    Checks c{"bounds-vs-betti", {}};
    for (int r : rs) {
        const int n_max = cfg.n_max < 0 ? desk_scale_n(r) : cfg.n_max;
        for (const auto& row : table(r, n_max, seeds)) {
            const auto b = betti(row.n, r, row.q, opt).betti;
            const bigint exact(b);
            std::vector<std::string> parts;
            bool fine = row.value <= exact;
            // every single-source bound that applies must also hold
            auto check = [&](const BoundRecord& rec, const std::string& name) {
                parts.push_back(name + "=" + rec.value.str());
                if (rec.value > exact) fine = false;
            };
            if (r >= 2 && row.q == (1 << r) - 1) check(bound_cross_polytope(row.n, r), "cross");
            for (const auto& s : seeds) {
                if (s.r != r || s.q != row.q || row.n < s.base_dim) continue;
                if (s.kind == SeedKind::propagation) {
                    check(bound_propagation(row.n, s.base_dim, s.rank), "propagation");
                    check(bound_projection(row.n, s.base_dim, s.rank), "projection");
                    if (row.n == s.base_dim + 1) check(bound_codim1(s.base_dim, s.rank), "codim1");
                } else {
                    check(bound_quotient(row.n, s.base_dim, s.rank), "quotient");
                }
            }
            c.add("r=" + std::to_string(r) + " n=" + std::to_string(row.n) + " q=" + std::to_string(row.q), fine,
                  "betti " + std::to_string(b) + ", combined bound " + row.decomposition() +
                      (row.value == exact ? " (tight)" : "") + "; " + join(parts));
        }
    }
    return c.emit(out, cfg.format);
}

inline int verify_identities(const RunConfig& cfg, std::ostream& out)
{
    const int n_max = cfg.n_max < 0 ? 30 : cfg.n_max;
    need(n_max >= 5, "identities need --n-max >= 5");
    Checks c{"identities", {}};
    const int app = appendix_identity_failure(n_max);
    c.add("appendix summation identities, n <= " + std::to_string(n_max), app == 0,
          app ? "fails at n=" + std::to_string(app) : "");
    const int chain = chain_identity_failure(n_max);
    c.add("cross-polytope(n,2) + quotient(n,4,1) = c_n, 3 <= n <= " + std::to_string(n_max), chain == 0,
          chain ? "fails at n=" + std::to_string(chain) : "");

    int bad = 0;
    for (int n = 5; n <= n_max && !bad; ++n) {
        const auto [sevens, fours] = ziqin_counts(n);
        if (bound_cross_polytope(n, 3).value != sevens || bound_quotient(n, 5, 1).value != fours) bad = n;
    }
    c.add("r=3 sphere counts match cross-polytope and quotient bounds, 5 <= n <= " + std::to_string(n_max), bad == 0,
          bad ? "fails at n=" + std::to_string(bad) : "");

    bad = 0;
    for (int n = 2; n <= n_max && !bad; ++n)
        if (beta1_closed_form(n) != bound_propagation(n, 2, 1).value) bad = n;
    c.add("n 2^{n-1} - 2^n + 1 = propagation(n,2,1)", bad == 0, bad ? "fails at n=" + std::to_string(bad) : "");

    bool grid = true, codim = true;
    for (int p = 1; p <= 20; ++p)
        for (int s = 1; s <= 3; ++s) {
            if (bound_propagation(p + 1, p, s).value != bound_codim1(p, s).value) codim = false;
            for (int n = p; n <= 20; ++n)
                if (bound_propagation(n, p, s).value < bound_projection(n, p, s).value) grid = false;
        }
    c.add("propagation >= projection, n <= 20", grid);
    c.add("propagation(p+1,p,s) = codim1(p,s)", codim);
    return c.emit(out, cfg.format);
}

inline int verify_geometry(const RunConfig& cfg, std::ostream& out)
{
    const int r = cfg.r < 0 ? 2 : cfg.r;
    need(r >= 2, "geometry suite needs --r >= 2");
    Checks c{"geometry", {}};
    const auto tets = five_tetrahedra();

    const auto h = hull_contains(tets[0].vertices, center_point(3));
    bool uniform = h.contains;
    for (const auto& w : h.weights) uniform = uniform && w == rational(1, 4);
    c.add("center of [0,1]^3 in the even tetrahedron", uniform, h.contains ? join([&] {
        std::vector<std::string> s;
        for (const auto& w : h.weights) s.push_back(fraction(w));
        return s;
    }()) : "not contained");

    const auto tri = verify_triangulation(tets, 2);
    c.add("five tetrahedra triangulate [0,1]^3 at scale 2", tri.ok, tri.ok ? "volumes sum to " + fraction(tri.total)
                                                                             : tri.failure);
    bool subsets_fail = true;
    for (std::size_t drop = 0; drop < tets.size(); ++drop) {
        auto sub = tets;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        if (verify_triangulation(sub, 2).ok) subsets_fail = false;
    }
    c.add("no four of the tetrahedra triangulate", subsets_fail);

    const int n_top = 2 * r + 1;
    if (n_top <= max_dimension) {
        bool sums = true;
        for (word_t w = 0; w <= full_mask(n_top); ++w)
            if (popcount(w) <= r && 2 * popcount(w) >= n_top) sums = false;
        const auto cov = center_coverable(n_top, r, cfg.clique_budget);
        c.add("coordinate-sum certificate at n=" + std::to_string(n_top), sums && cov.status == Coverage::not_coverable,
              "every vertex within " + std::to_string(r) + " of the origin has coordinate sum < " +
                  std::to_string(n_top) + "/2");
    }

    const int n_budget = cfg.n_budget < 0 ? n_top : cfg.n_budget;
    const auto rep = n_of_r(r, n_budget, cfg.clique_budget);
    std::vector<std::string> scan;
    for (const auto& [n, st] : rep.scan) scan.push_back(std::to_string(n) + ":" + to_string(st));
    const bool bounded = rep.least_uncovered.has_value() && *rep.least_uncovered <= n_top;
    c.add("least n with uncovered center, r=" + std::to_string(r), r == 2 ? rep.certified && rep.least_uncovered == 4
                                                                          : bounded || rep.bracket_lo <= n_budget,
          "bracket [" + std::to_string(rep.bracket_lo) + "," + std::to_string(rep.bracket_hi) + "]" +
              (rep.certified ? ", n(" + std::to_string(r) + ") = " + std::to_string(*rep.least_uncovered) : "") +
              "; scan " + join(scan, " ") + "; " + rep.caveat);
    return c.emit(out, cfg.format);
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.suite == "contractions") return verify_contractions(cfg, out);
    if (cfg.suite == "generators") return verify_generators(cfg, out, err);
    if (cfg.suite == "scale-inclusions") return verify_scale(cfg, out, err);
    if (cfg.suite == "bounds-vs-betti") return verify_bounds_vs_betti(cfg, out, err);
    if (cfg.suite == "identities") return verify_identities(cfg, out);
    if (cfg.suite == "geometry") return verify_geometry(cfg, out);
    throw usage_error("unknown suite '" + cfg.suite +
                      "' (contractions | generators | scale-inclusions | bounds-vs-betti | identities | geometry)");
}

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.command == "betti") return cmd_betti(cfg, out, err);
    if (cfg.command == "induced") return cmd_induced(cfg, out, err);
    if (cfg.command == "quotient") return cmd_quotient(cfg, out, err);
    if (cfg.command == "scale") return cmd_scale(cfg, out, err);
    if (cfg.command == "skeleton") return cmd_skeleton(cfg, out, err);
    if (cfg.command == "family") return cmd_family(cfg, out, err);
    if (cfg.command == "center") return cmd_center(cfg, out, err);
    if (cfg.command == "table") return cmd_table(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    throw usage_error("no command given; see --help");
}

} // namespace detail

/// Parses and runs one command line.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    RunConfig cfg;
    CLI::App app{"Homology of Vietoris-Rips complexes of hypercube graphs Q_n.\n"
                 "Vertices print as binary strings with coordinate 1 first, i.e. the least significant bit of\n"
                 "the vertex word leads: \"011\" is (0,1,1), the word 0b110.",
                 "hcvr"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Show help for every command");

    app.add_option("--budget", cfg.budget, "Max stored simplex vertex entries (default: $HCVR_BUDGET or 2e8)")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv", "markdown"}));
    app.add_flag("--quiet", cfg.quiet, "No progress on stderr");

    auto n_r = [&](CLI::App* s, bool q) {
        s->add_option("--n", cfg.n, "Cube dimension")->required();
        s->add_option("--r", cfg.r, "Scale")->required();
        if (q) s->add_option("--q", cfg.q, "Homology dimension")->required();
    };

    auto* betti = app.add_subcommand("betti", "Betti number of VR(Q_n;r) (unreduced in degree 0)");
    n_r(betti, true);
    betti->add_option("--q-max", cfg.q_max, "Compute q..q-max in one pass");
    betti->add_option("--field", cfg.field, "Prime p for coefficients in Z/p");

    auto* induced = app.add_subcommand("induced", "Rank of H_q from all p-subcubes into VR(Q_n;r)");
    n_r(induced, true);
    induced->add_option("--p", cfg.p, "Subcube dimension")->required();
    induced->add_option("--field", cfg.field, "Prime p for coefficients in Z/p");

    auto* quotient = app.add_subcommand("quotient", "Rank of H_q(VR(Q_n;r)) modulo the image of all (m-1)-subcubes");
    n_r(quotient, true);
    quotient->add_option("--m", cfg.m, "Quotient level")->required();
    quotient->add_option("--field", cfg.field, "Prime p for coefficients in Z/p");

    auto* scale = app.add_subcommand("scale", "Rank of H_q(VR(Q_n;r)) -> H_q(VR(Q_n;r'))");
    n_r(scale, true);
    scale->add_option("--r-prime", cfg.r_prime, "Target scale")->required();
    scale->add_option("--field", cfg.field, "Prime p for coefficients in Z/p");

    auto* skeleton = app.add_subcommand("skeleton", "Dump simplices of VR(Q_n;r), one per line");
    n_r(skeleton, false);
    skeleton->add_option("--dim-cap", cfg.dim_cap, "Top dimension")->required();
    skeleton->add_option("--dim-floor", cfg.dim_floor, "Lowest dimension");

    auto* family = app.add_subcommand("family", "Dump the cross-polytopal generator family");
    n_r(family, false);

    auto* center = app.add_subcommand("center", "Is the cube's center in the hull of a diameter-r subset?");
    n_r(center, false);
    center->add_option("--clique-budget", cfg.clique_budget, "Max maximal cliques examined");

    auto* tbl = app.add_subcommand("table", "Lower-bound table for scale r");
    tbl->add_option("--r", cfg.r, "Scale")->required();
    tbl->add_option("--n-max", cfg.n_max, "Largest n (default 12)");
    tbl->add_option("--seeds", cfg.seeds, "Seed file (JSON)");
    tbl->add_flag("--compare", cfg.compare, "Also compute exact Betti numbers at desk scale");
    tbl->add_option("--compare-n-max", cfg.compare_n_max, "Largest n for --compare");
    bool markdown = false;
    tbl->add_flag("--markdown", markdown, "Same as --format markdown");
    tbl->add_option("--field", cfg.field, "Prime p for --compare");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", cfg.suite,
                       "contractions | generators | scale-inclusions | bounds-vs-betti | identities | geometry")
        ->required();
    verify->add_option("--n", cfg.n, "Cube dimension");
    verify->add_option("--r", cfg.r, "Scale");
    verify->add_option("--q", cfg.q, "Homology dimension");
    verify->add_option("--r-prime", cfg.r_prime, "Target scale");
    verify->add_option("--n-max", cfg.n_max, "Largest n");
    verify->add_option("--n-budget", cfg.n_budget, "Largest n scanned for n(r)");
    verify->add_option("--clique-budget", cfg.clique_budget, "Max maximal cliques examined per n");
    verify->add_option("--seeds", cfg.seeds, "Seed file (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }
    if (markdown) cfg.format = "markdown";
    for (auto* s : app.get_subcommands()) cfg.command = s->get_name();
    if (cfg.format == "text" && cfg.command == "table") cfg.format = "csv";

    try {
        return detail::dispatch(cfg, out, err);
    } catch (const usage_error& e) {
        err << "hcvr: " << e.what() << '\n';
        return usage;
    } catch (const capability_error& e) {
        err << "hcvr: capability limit: " << e.what() << '\n';
        return capability;
    }
}

} // namespace hcvr::cli
