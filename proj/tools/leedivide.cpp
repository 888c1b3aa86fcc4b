// leedivide: invariants, verification suites and batch tables.
//
// Exit codes: 0 ok, 1 bad input (structured error on stderr), 2 property
// violation in `verify`.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "leedivide/invariant.hpp"
#include "leedivide/moves.hpp"
#include "leedivide/suites.hpp"
#include "leedivide/table.hpp"

using namespace leedivide;

namespace {

struct Flags {
    std::string ring = "Z2";
    std::string format = "json";
    std::uint64_t seed = 1;
    int max_crossings = 8;
    int jobs = 0;
};

void add_common(CLI::App* app, Flags& f, bool suite_flags) {
    app->add_option("--ring", f.ring, "coefficient ring: Z2 (Z, c=2) or Qh (Q[h], c=h)")->capture_default_str();
    app->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app->add_option("--jobs", f.jobs, "worker threads (default: LEEDIVIDE_JOBS or all cores)");
    if (suite_flags) {
        app->add_option("--seed", f.seed, "random seed")->capture_default_str();
        app->add_option("--max-crossings", f.max_crossings, "largest table diagram used")->capture_default_str();
    }
}

int fail(const Error& e) {
    std::cerr << nlohmann::json{{"error", error_json(e)}}.dump() << "\n";
    return 1;
}

LinkDiagram read_diagram(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw Error(ErrorCode::Io, "cannot open " + arg.substr(1));
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') return parse_pd_json(nlohmann::json::parse(text));
        return parse_pd(text);
    }
    return parse_pd(arg);
}

int cmd_invariant(const std::vector<std::string>& pds, const std::string& name, const Flags& f) {
    try {
        if (f.format == "csv") std::cout << csv_header() << "\n";
        for (const std::string& pd : pds) {
            LinkDiagram D = read_diagram(pd);
            if (!name.empty()) D.set_name(name);
            const nlohmann::json j = invariant_report(D, f.ring).to_json();
            std::cout << (f.format == "csv" ? csv_row(j) : j.dump()) << "\n";
        }
    } catch (const Error& e) {
        return fail(e);
    } catch (const nlohmann::json::exception& e) {
        return fail(Error(ErrorCode::ParseError, e.what()));
    }
    return 0;
}

int cmd_verify(const std::string& suite, const Flags& f, int moves, int scripts) {
    SuiteOptions opt;
    opt.seed = f.seed;
    opt.max_crossings = f.max_crossings;
    opt.ring = f.ring;
    opt.jobs = resolve_jobs(f.jobs);
    if (moves >= 0) opt.moves = moves;
    if (scripts >= 0) opt.scripts = scripts;
    SuiteReport rep;
    try {
        rep = run_suite(suite, opt);
    } catch (const Error& e) {
        return fail(e);
    }
    if (f.format == "csv") {
        std::cout << "suite,property,passed,total\n";
        for (const auto& p : rep.properties)
            std::cout << suite << "," << csv_escape(p.name) << "," << p.passed << "," << p.total << "\n";
    } else {
        nlohmann::json j = rep.to_json();
        j["seed"] = f.seed;
        j["max_crossings"] = f.max_crossings;
        j["ring"] = f.ring;
        std::cout << j.dump() << "\n";
    }
    if (rep.ok()) return 0;
    for (const auto& r : rep.failures) std::cerr << "reproducer: " << r.dump() << "\n";
    return 2;
}

int cmd_batch(const std::string& path, const Flags& f) {
    BatchResult res;
    try {
        res = run_batch(read_table(path), f.ring, resolve_jobs(f.jobs));
    } catch (const Error& e) {
        return fail(e);
    }
    if (f.format == "csv") {
        std::cout << csv_header() << "\n";
        for (const auto& r : res.rows) std::cout << csv_row(r) << "\n";
        std::cout << "# " << res.summary.dump() << "\n";
    } else {
        for (const auto& r : res.rows) std::cout << r.dump() << "\n";
        std::cout << res.summary.dump() << "\n";
    }
    return 0;
}

template <EuclideanRing R>
nlohmann::json script_report(const LinkDiagram& D, const std::vector<Move>& script, const RingDescriptor<R>& ring) {
    const ScriptCheck sc = verify_exponent(D, script, ring);
    nlohmann::json j = sc.to_json();
    j["ring"] = ring.id;
    j["final"] = sc.diagrams.back().D.to_pd();
    return j;
}

int cmd_script(const std::string& pd, const std::string& script_path, const Flags& f) {
    try {
        const LinkDiagram D = read_diagram(pd);
        std::ifstream in(script_path);
        if (!in) throw Error(ErrorCode::Io, "cannot open " + script_path);
        const auto script = parse_move_script(nlohmann::json::parse(in));
        nlohmann::json j;
        if (f.ring == "Z2") j = script_report(D, script, ring_z2());
        else if (f.ring == "Qh") j = script_report(D, script, ring_qh());
        else throw Error(ErrorCode::UnknownRing, "unknown ring '" + f.ring + "' (expected Z2 or Qh)");
        std::cout << j.dump() << "\n";
        return j["ok"].get<bool>() || !j["image_nonzero"].get<bool>() ? 0 : 2;
    } catch (const Error& e) {
        return fail(e);
    } catch (const nlohmann::json::exception& e) {
        return fail(Error(ErrorCode::ParseError, e.what()));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Divisibility of Lee's canonical class and the s_bar invariant"};
    app.require_subcommand(1);
    Flags flags;

    auto* inv = app.add_subcommand("invariant", "k_c, s_bar and torsion of one or more diagrams");
    std::vector<std::string> pds;
    std::string name;
    inv->add_option("pd", pds, "PD text such as \"PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]\", \"U\", or @file")->required();
    inv->add_option("--name", name, "name reported for the diagram");
    add_common(inv, flags, false);

    auto* ver = app.add_subcommand("verify", "run a property suite");
    std::string suite;
    int moves = -1, scripts = -1;
    ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    ver->add_option("--moves", moves, "rm: number of single moves (default 200)");
    ver->add_option("--scripts", scripts, "rm, morse: number of scripts (default 50)");
    add_common(ver, flags, true);

    auto* bat = app.add_subcommand("batch", "evaluate a JSONL or CSV table");
    std::string table;
    bat->add_option("table", table, "table file (.jsonl or .csv)")->required();
    add_common(bat, flags, false);

    auto* scr = app.add_subcommand("script", "apply a move script and check the exponent relation");
    std::string script_pd, script_path;
    scr->add_option("pd", script_pd, "starting diagram")->required();
    scr->add_option("script", script_path, "JSON list of moves")->required();
    add_common(scr, flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (*inv) return cmd_invariant(pds, name, flags);
    if (*ver) return cmd_verify(suite, flags, moves, scripts);
    if (*bat) return cmd_batch(table, flags);
    return cmd_script(script_pd, script_path, flags);
}
