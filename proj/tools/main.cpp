// Command-line front end: bound analysis, Gale construction, desk-scale
// counting, and verification harnesses for mixed sparse systems.

#include "fewnomial/bounds.hpp"
#include "fewnomial/gale.hpp"
#include "fewnomial/jacobian.hpp"
#include "fewnomial/lattice.hpp"
#include "fewnomial/solver.hpp"
#include "fewnomial/sparse_system.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace fewnomial;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

FewnomialSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("file not found: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

// Bring a parsed system into mixed form: ensure constant terms, strip
// binomial equations, then read off the decomposition.
MixedStructure prepare_structure(const FewnomialSystem& sys) {
    FewnomialSystem work = eliminate_binomials(normalize_constant_terms(sys));
    return detect_mixed_structure(normalize_constant_terms(work));
}

json bound_value_json(const BoundValue& bv) {
    json j;
    j["scalar"] = format_rational(bv.scalar);
    j["two_exp"] = bv.two_exp;
    j["multinomial_factor"] = bv.multinomial_factor.get_str();
    j["e_power"] = bv.e_power;
    j["value"] = bv.value();
    j["floor"] = bv.floor().get_str();
    return j;
}

json bound_report_json(const BoundReport& rep) {
    json j;
    j["n"] = rep.n;
    j["block_sizes"] = rep.block_sizes;
    j["l"] = rep.l;
    j["lattice_index"] = rep.lattice_index.get_str();
    j["odd_index"] = rep.odd_index;
    json entries = json::object();
    for (const auto& e : rep.entries) {
        json je;
        je["applicable"] = e.applicable;
        if (e.bound)
            je["bound"] = bound_value_json(*e.bound);
        if (!e.reason.empty())
            je["reason"] = e.reason;
        entries[e.name] = std::move(je);
    }
    j["entries"] = std::move(entries);
    j["operative_positive"] = rep.operative_positive.get_str();
    if (rep.operative_real)
        j["operative_real"] = rep.operative_real->get_str();
    return j;
}

void print_json(const json& j) {
    // nlohmann objects iterate in key order, so dumps are canonical
    std::cout << j.dump(2) << "\n";
}

void print_bound_table(const BoundReport& rep) {
    std::printf("n = %d, l = %d, lattice index = %s (%s)\n", rep.n, rep.l,
                rep.lattice_index.get_str().c_str(), rep.odd_index ? "odd" : "even");
    std::printf("%-16s %-12s %-22s %s\n", "bound", "floor", "value", "note");
    for (const auto& e : rep.entries) {
        if (e.applicable && e.bound)
            std::printf("%-16s %-12s %-22.6g %s\n", e.name.c_str(),
                        e.bound->floor().get_str().c_str(), e.bound->value(), "");
        else
            std::printf("%-16s %-12s %-22s %s\n", e.name.c_str(), "-", "-", e.reason.c_str());
    }
    std::printf("operative positive bound: %s\n", rep.operative_positive.get_str().c_str());
    if (rep.operative_real)
        std::printf("operative real bound: %s\n", rep.operative_real->get_str().c_str());
    else
        std::printf("operative real bound: not applicable (even lattice index)\n");
}

std::vector<int> parse_blocks(const std::string& spec) {
    std::vector<int> blocks;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            blocks.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw Error("malformed --blocks list: " + spec);
        }
    }
    if (blocks.empty())
        throw Error("empty --blocks list");
    return blocks;
}

int cmd_analyze(const std::string& path, bool with_count, double box, const std::string& format) {
    FewnomialSystem sys = load_system(path);
    MixedStructure ms = prepare_structure(sys);
    ExponentMatrix w = exponent_matrix(ms);
    Integer index = lattice_index(w);
    BoundReport rep = best_bound(ms, IndexInfo{index, odd_index_check(w)});

    std::optional<int> positive, real;
    if (with_count) {
        SolverOptions opts;
        opts.box = box;
        SolutionSet sols = solve_real(system_from_structure(ms), opts);
        positive = sols.positive_count();
        real = sols.real_count();
    }

    if (format == "json") {
        json j;
        j["bounds"] = bound_report_json(rep);
        if (positive) {
            j["counts"]["positive"] = *positive;
            j["counts"]["real"] = *real;
        }
        print_json(j);
    } else {
        print_bound_table(rep);
        if (positive)
            std::printf("observed counts: %d positive, %d real torus solutions\n", *positive,
                        *real);
    }

    if (positive) {
        if (Integer(*positive) > rep.operative_positive)
            return kExitVerification;
        if (rep.operative_real && Integer(*real) > *rep.operative_real)
            return kExitVerification;
    }
    return kExitOk;
}

int cmd_gale(const std::string& path) {
    FewnomialSystem sys = load_system(path);
    MixedStructure ms = prepare_structure(sys);
    GaleSystem gs = build_gale_system(ms, kernel_basis(exponent_matrix(ms)));
    FewnomialSystem cleared = gale_cleared_system(gs);

    json j = json::parse(serialize_system(cleared));
    json alpha = json::array();
    for (int r = 0; r < gs.relations.alphas.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < gs.relations.alphas.cols(); ++c)
            row.push_back(gs.relations.alphas.at(r, c).get_str());
        alpha.push_back(std::move(row));
    }
    j["alpha"] = std::move(alpha);
    json labels = json::array();
    for (const auto& [i, jj] : gs.relations.column_labels)
        labels.push_back(json::array({i + 1, jj}));
    j["alpha_columns"] = std::move(labels);
    print_json(j);
    return kExitOk;
}

int cmd_bounds_table(int n, int lmax) {
    if (n < 2 || lmax < n)
        throw Error("bounds-table requires n >= 2 and lmax >= n");
    std::printf("n");
    for (int i = 1; i <= n; ++i)
        std::printf(",l%d", i);
    std::printf(",khovanskii,bs07,bbs,mixed_pos,mixed_real,ratio\n");
    // all compositions of every l <= lmax into n positive parts, sorted
    std::vector<int> blocks(static_cast<std::size_t>(n), 1);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == n - 1) {
            blocks[pos] = remaining;
            int l = 0;
            for (int b : blocks)
                l += b;
            Integer nl;
            mpz_ui_pow_ui(nl.get_mpz_t(), static_cast<unsigned long>(n),
                          static_cast<unsigned long>(l));
            Rational ratio(multinomial(l, blocks), nl);
            std::printf("%d", n);
            for (int b : blocks)
                std::printf(",%d", b);
            std::printf(",%s,%s,%s,%s,%s,%.6f\n",
                        khovanskii_bound(n, l).floor().get_str().c_str(),
                        bs07_positive_bound(n, l).floor().get_str().c_str(),
                        bbs_real_bound(n, l).floor().get_str().c_str(),
                        mixed_bound(blocks, BoundVariant::Positive).floor().get_str().c_str(),
                        mixed_bound(blocks, BoundVariant::Real).floor().get_str().c_str(),
                        ratio.get_d());
            return;
        }
        for (int v = 1; v <= remaining - (n - 1 - pos); ++v) {
            blocks[pos] = v;
            rec(pos + 1, remaining - v);
        }
    };
    for (int l = n; l <= lmax; ++l)
        rec(0, l);
    return kExitOk;
}

int cmd_count(const std::string& path, bool positive_only, bool real_only, double box,
              const std::string& format) {
    FewnomialSystem sys = load_system(path);
    SolverOptions opts;
    opts.box = box;
    SolutionSet sols = solve_real(normalize_constant_terms(sys), opts);
    json j;
    if (!real_only)
        j["positive"] = sols.positive_count();
    if (!positive_only)
        j["real"] = sols.real_count();
    j["suspects"] = sols.suspects.size();
    if (format == "json") {
        print_json(j);
    } else {
        if (!real_only)
            std::printf("positive: %d\n", sols.positive_count());
        if (!positive_only)
            std::printf("real: %d\n", sols.real_count());
        if (!sols.suspects.empty())
            std::printf("suspect (unresolved) sites: %zu\n", sols.suspects.size());
    }
    return kExitOk;
}

int cmd_verify_gale(const std::string& path, double box, const std::string& format) {
    FewnomialSystem sys = load_system(path);
    MixedStructure ms = prepare_structure(sys);
    SolverOptions opts;
    opts.box = box;
    GaleBijectionReport rep = verify_gale_bijection(ms, opts);
    json j;
    j["x_positive"] = rep.x_positive;
    j["x_real"] = rep.x_real;
    j["gale_positive_chamber"] = rep.gale_positive_chamber;
    j["gale_all_chambers"] = rep.gale_all_chambers;
    j["positive_match"] = rep.positive_match;
    j["real_compared"] = rep.real_compared;
    if (rep.real_compared)
        j["real_match"] = rep.real_match;
    else
        j["skip_reason"] = rep.skip_reason;
    j["matched_pairs"] = rep.matched_pairs;
    j["has_suspects"] = rep.has_suspects;
    if (format == "json") {
        print_json(j);
    } else {
        std::printf("original system: %d positive, %d real torus solutions\n", rep.x_positive,
                    rep.x_real);
        std::printf("Gale system: %d in the positive chamber, %d across all chambers\n",
                    rep.gale_positive_chamber, rep.gale_all_chambers);
        std::printf("positive counts %s\n", rep.positive_match ? "match" : "MISMATCH");
        if (rep.real_compared)
            std::printf("real counts %s\n", rep.real_match ? "match" : "MISMATCH");
        else
            std::printf("real comparison skipped: %s\n", rep.skip_reason.c_str());
    }
    bool ok = rep.positive_match && (!rep.real_compared || rep.real_match) && !rep.has_suspects;
    return ok ? kExitOk : kExitVerification;
}

int cmd_verify_jacobian(const std::string& blocks_spec, int trials, std::uint64_t seed,
                        const std::string& format) {
    std::vector<int> blocks = parse_blocks(blocks_spec);
    DetDegReport rep = random_detdeg_suite(blocks, trials, seed);
    bool ok = rep.ladder_identity_ok && rep.bound_violations == 0 && rep.minor_violations == 0;
    if (format == "json") {
        json j;
        j["trials"] = rep.trials;
        j["bound_violations"] = rep.bound_violations;
        j["minor_violations"] = rep.minor_violations;
        j["equality_rate"] = rep.equality_rate;
        j["ladder_identity_ok"] = rep.ladder_identity_ok;
        json details = json::array();
        for (const auto& t : rep.details) {
            json d;
            d["k"] = t.k;
            d["observed"] = t.observed;
            d["bound"] = t.bound;
            d["within_bound"] = t.within_bound;
            d["equality"] = t.equality;
            details.push_back(std::move(d));
        }
        j["details"] = std::move(details);
        j["pass"] = ok;
        print_json(j);
    } else {
        for (const auto& t : rep.details) {
            std::printf("k=%d observed=(", t.k);
            for (std::size_t b = 0; b < t.observed.size(); ++b)
                std::printf("%s%d", b ? "," : "", t.observed[b]);
            std::printf(") bound=%d %s\n", t.bound.empty() ? -1 : t.bound[0],
                        t.within_bound ? (t.equality ? "equality" : "ok") : "VIOLATION");
        }
        std::printf("%d trials, %d bound violations, %d minor violations, equality rate %.2f\n",
                    rep.trials, rep.bound_violations, rep.minor_violations, rep.equality_rate);
        std::printf("%s\n", ok ? "pass" : "FAIL");
    }
    return ok ? kExitOk : kExitVerification;
}

int cmd_verify_inequalities(const std::string& blocks_spec, const std::string& format) {
    std::vector<int> blocks = parse_blocks(blocks_spec);
    InequalityReport rep = verify_inequalities(blocks);
    bool ok = rep.intbound_ok && rep.lemma_ok_real && rep.lemma_ok_chamber;
    int l = 0;
    for (int b : blocks)
        l += b;
    if (l < 3)  // only the factorial bound and lemma checks exist for l >= 3
        ok = rep.intbound_ok;
    if (format == "json") {
        json j;
        j["intbound_checked"] = rep.intbound_checked;
        j["intbound_ok"] = rep.intbound_ok;
        j["intbound_failures"] = rep.intbound_failures;
        j["lemma_ok_real"] = rep.lemma_ok_real;
        j["lemma_ok_chamber"] = rep.lemma_ok_chamber;
        j["pass"] = ok;
        print_json(j);
    } else {
        std::printf("factorial-vs-power bound: %s\n",
                    rep.intbound_checked ? (rep.intbound_ok ? "ok" : "FAIL") : "skipped (l < 5)");
        if (l >= 3) {
            std::printf("bracket sum vs (e^4-1)/2 a_0: %s\n", rep.lemma_ok_real ? "ok" : "FAIL");
            std::printf("chamber sum vs (e^2-1)/2 a_0: %s\n",
                        rep.lemma_ok_chamber ? "ok" : "FAIL");
        } else {
            std::printf("bracket-sum checks: skipped (l < 3)\n");
        }
        std::printf("%s\n", ok ? "pass" : "FAIL");
    }
    return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse mixed polynomial systems: bounds, Gale duality, verification"};
    app.require_subcommand(1);

    std::string file, format = "json", blocks_spec;
    bool with_count = false, positive_only = false, real_only = false;
    double box = 10.0;
    int n = 2, lmax = 4, trials = 25;
    std::uint64_t seed = 42;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json or table")
            ->check(CLI::IsMember({"json", "table"}));
    };

    CLI::App* analyze = app.add_subcommand("analyze", "structure, lattice index, and bounds");
    analyze->add_option("file", file, "system JSON file")->required();
    analyze->add_flag("--count", with_count, "also run the desk-scale solver");
    analyze->add_option("--box", box, "log-coordinate search half-width");
    analyze->add_option("--seed", seed, "random seed (reproducibility)");
    add_format(analyze);

    CLI::App* gale = app.add_subcommand("gale", "emit the Gale-dual system with its alpha matrix");
    gale->add_option("file", file, "system JSON file")->required();

    CLI::App* table = app.add_subcommand("bounds-table", "CSV of bounds over block compositions");
    table->add_option("--n", n, "number of equations")->required();
    table->add_option("--lmax", lmax, "largest total l")->required();

    CLI::App* count = app.add_subcommand("count", "count real torus solutions");
    count->add_option("file", file, "system JSON file")->required();
    count->add_flag("--positive", positive_only, "report the positive count only");
    count->add_flag("--real", real_only, "report the real count only");
    count->add_option("--box", box, "log-coordinate search half-width");
    count->add_option("--seed", seed, "random seed (reproducibility)");
    add_format(count);

    CLI::App* vgale = app.add_subcommand("verify-gale", "compare counts through Gale duality");
    vgale->add_option("file", file, "system JSON file")->required();
    vgale->add_option("--box", box, "log-coordinate search half-width");
    vgale->add_option("--seed", seed, "random seed (reproducibility)");
    add_format(vgale);

    CLI::App* vjac = app.add_subcommand("verify-jacobian", "random Jacobian multidegree checks");
    vjac->add_option("--blocks", blocks_spec, "comma-separated block sizes")->required();
    vjac->add_option("--trials", trials, "number of random instances");
    vjac->add_option("--seed", seed, "random seed");
    add_format(vjac);

    CLI::App* vineq = app.add_subcommand("verify-inequalities", "exact chamber-count inequalities");
    vineq->add_option("--blocks", blocks_spec, "comma-separated block sizes")->required();
    add_format(vineq);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed())
            return cmd_analyze(file, with_count, box, format);
        if (gale->parsed())
            return cmd_gale(file);
        if (table->parsed())
            return cmd_bounds_table(n, lmax);
        if (count->parsed()) {
            if (positive_only && real_only)
                throw Error("--positive and --real are mutually exclusive");
            return cmd_count(file, positive_only, real_only, box, format);
        }
        if (vgale->parsed())
            return cmd_verify_gale(file, box, format);
        if (vjac->parsed())
            return cmd_verify_jacobian(blocks_spec, trials, seed, format);
        if (vineq->parsed())
            return cmd_verify_inequalities(blocks_spec, format);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
