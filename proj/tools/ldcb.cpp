// Command-line driver. Exit codes: 0 YES/success, 1 NO, 2 usage or input error, 3 resource limit,
// 4 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ldcb/bribery.hpp"
#include "ldcb/election.hpp"
#include "ldcb/errors.hpp"
#include "ldcb/flow.hpp"
#include "ldcb/gadgets.hpp"
#include "ldcb/io.hpp"
#include "ldcb/metrics.hpp"
#include "ldcb/oracle.hpp"
#include "ldcb/poly_solvers.hpp"
#include "ldcb/routing.hpp"
#include "ldcb/sat.hpp"
#include "ldcb/wmg.hpp"

using namespace ldcb;

namespace {

constexpr int kYes = 0, kNo = 1, kUsage = 2, kResource = 3, kInternal = 4;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write '" + path + "'");
    f << text;
}

// Alternatives named in the order they appear in `text`.
AlternativeSet alts_from_pref(const std::string& text) {
    std::vector<std::string> names;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, '>');) names.push_back(detail::trim(tok));
    return AlternativeSet(names);
}

struct OracleFlags {
    std::uint64_t max_nodes = 0;
    double time_s = 0;
    std::size_t max_ball = 0;
    bool no_prune = false;

    void add(CLI::App* app) {
        app->add_option("--max-nodes", max_nodes, "search node limit (overrides ORACLE_MAX_NODES)");
        app->add_option("--time-s", time_s, "time limit in seconds (overrides ORACLE_TIME_S)");
        app->add_option("--max-ball", max_ball, "per-voter ball size limit");
        app->add_flag("--no-prune", no_prune, "disable the score bound");
    }
    OracleBudget budget() const {
        auto b = OracleBudget::from_env();
        if (max_nodes) b.max_nodes = max_nodes;
        if (time_s > 0) b.time_s = time_s;
        if (max_ball) b.max_ball = max_ball;
        b.prune = !no_prune;
        b.validate();
        return b;
    }
};

struct GadgetFlags {
    std::string reduction, cnf;
    std::int64_t delta_pad = 0, fillers = 0;
    int k = 2;
    std::string metric;

    void add(CLI::App* app) {
        app->add_option("--reduction", reduction, "kapp-swap | kapp-maxdisp-priced | borda")->required();
        app->add_option("--cnf", cnf, "(3,B2)-SAT formula in DIMACS form")->required();
        app->add_option("--delta-pad", delta_pad, "padding for kapp-swap (default: the construction's value)");
        app->add_option("--fillers", fillers, "filler count for kapp-maxdisp-priced and borda (default: floor)");
        app->add_option("--k", k, "k for kapp-maxdisp-priced");
        app->add_option("--metric", metric, "kapp-swap: swap|footrule; borda: swap|footrule|maxdisp");
    }
    GadgetInstance build() const {
        auto sat = parse_and_validate_3b2(read_file(cnf));
        switch (parse_reduction(reduction)) {
            case Reduction::KappSwap:
                return gen_kapproval_swap_gadget(sat, delta_pad, metric.empty() ? Metric::Swap : parse_metric(metric));
            case Reduction::KappMaxdispPriced: return gen_kapproval_maxdisp_priced_gadget(sat, k, fillers);
            case Reduction::Borda:
                return gen_borda_gadget(sat, metric.empty() ? Metric::MaxDisplacement : parse_metric(metric), fillers);
        }
        throw InvalidInput("unknown reduction");
    }
};

std::vector<int> parse_bits(const std::string& s) {
    std::vector<int> v;
    for (char ch : s) {
        if (ch == '0' || ch == '1') v.push_back(ch - '0');
        else if (ch != ' ' && ch != ',') throw InvalidInput("assignment must be a string of 0/1");
    }
    return v;
}

std::vector<int> parse_matrix_row(const std::string& row) {
    std::vector<int> v;
    std::stringstream ss(row);
    for (std::string x; std::getline(ss, x, ',');) v.push_back(static_cast<int>(detail::parse_int(detail::trim(x), 0, "margin")));
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local distance-constrained bribery toolkit"};
    app.require_subcommand(1);
    int rc = kYes;

    // winner
    std::string inst_path;
    auto* winner = app.add_subcommand("winner", "winners of the instance's profile under its rule");
    winner->add_option("--instance", inst_path, "instance file")->required();

    // distance
    std::string metric_s, p1s, p2s;
    auto* dist = app.add_subcommand("distance", "distance between two preferences");
    dist->add_option("--metric", metric_s)->required();
    dist->add_option("--p1", p1s)->required();
    dist->add_option("--p2", p2s)->required();

    // ball
    std::string pref_s;
    std::int64_t radius = 0;
    std::size_t cap = kDefaultBallCap;
    auto* ballc = app.add_subcommand("ball", "all preferences within a radius, lexicographic order");
    ballc->add_option("--metric", metric_s)->required();
    ballc->add_option("--pref", pref_s)->required();
    ballc->add_option("--radius", radius)->required();
    ballc->add_option("--cap", cap, "refuse balls larger than this");

    // solve
    std::string solver = "auto";
    bool allow_oracle = false;
    OracleFlags oflags;
    auto* solve = app.add_subcommand("solve", "decide an instance");
    solve->add_option("--instance", inst_path)->required();
    solve->add_option("--solver", solver,
                      "auto | plurality | veto | kapproval-small | kapproval-maxdisp | kapproval-maxdisp-literal | "
                      "sbucklin-small | sbucklin-maxdisp | oracle");
    solve->add_flag("--oracle", allow_oracle, "allow the exponential exact search on NP-complete cells");
    oflags.add(solve);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact exhaustive search");
    oracle->add_option("--instance", inst_path)->required();
    oflags.add(oracle);

    // gen-gadget
    GadgetFlags gflags;
    std::string out_path, names_path;
    auto* gen = app.add_subcommand("gen-gadget", "bribery instance from a (3,B2)-SAT formula");
    gflags.add(gen);
    gen->add_option("--out", out_path, "instance output (default stdout)");
    gen->add_option("--names", names_path, "name-map output");

    // witness
    std::string assignment;
    auto* wit = app.add_subcommand("witness", "bribed profile for a gadget under an assignment");
    gflags.add(wit);
    wit->add_option("--assignment", assignment, "values of x1..xn, e.g. 101")->required();

    // verify
    std::string witness_path;
    auto* ver = app.add_subcommand("verify", "check a witness block against an instance");
    ver->add_option("--instance", inst_path)->required();
    ver->add_option("--witness", witness_path, "file holding pref: lines")->required();

    // realize-wmg
    int core = 0, K = 2, fillers = 0;
    std::string margins;
    auto* wmg = app.add_subcommand("realize-wmg", "profile with prescribed pairwise margins");
    wmg->add_option("--core", core)->required();
    wmg->add_option("--K", K);
    wmg->add_option("--fillers", fillers)->required();
    wmg->add_option("--margins", margins, "rows separated by ';', entries by ','")->required();

    // dump-flow
    std::int64_t only_guess = -1;
    auto* dump = app.add_subcommand("dump-flow", "networks the routed flow solver builds");
    dump->add_option("--instance", inst_path)->required();
    dump->add_option("--guess", only_guess, "print only this guess");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kYes : kUsage;
    }

    try {
        if (*winner) {
            auto in = parse_instance(read_file(inst_path));
            auto w = winners(in.profile, in.rule);
            std::cout << "winners:";
            for (Alt a : w) std::cout << " " << in.profile.alts.name(a);
            std::cout << "\n";
            std::cout << "unique: " << (w.size() == 1 ? "yes" : "no") << "\n";
        } else if (*dist) {
            auto alts = alts_from_pref(p1s);
            auto p = parse_preference(p1s, alts), q = parse_preference(p2s, alts);
            std::cout << distance(parse_metric(metric_s), p, q) << "\n";
        } else if (*ballc) {
            auto alts = alts_from_pref(pref_s);
            auto p = parse_preference(pref_s, alts);
            if (radius < 0) throw InvalidInput("radius must be non-negative");
            for (const auto& q : ball(p, parse_metric(metric_s), radius, cap))
                std::cout << render_preference(q, alts) << "\n";
        } else if (*solve || *oracle) {
            auto in = parse_instance(read_file(inst_path));
            BriberyOutcome out;
            std::string used;
            if (*oracle || solver == "oracle") {
                out = solve_exhaustive(in, oflags.budget());
                used = route_name(Route::Hard);
            } else if (solver == "auto") {
                Route r;
                out = solve_auto(in, allow_oracle, oflags.budget(), &r);
                used = route_name(r);
            } else if (solver == "kapproval-maxdisp-literal") {
                bool yes = kapproval_maxdisp_literal_decision(in);
                std::cout << "solver: " << solver << "\ndecision: " << (yes ? "YES" : "NO") << "\n";
                return yes ? kYes : kNo;
            } else {
                used = solver;
                if (solver == "plurality") out = solve_plurality(in);
                else if (solver == "veto") out = solve_veto(in);
                else if (solver == "kapproval-small") out = solve_kapproval_small_radius(in);
                else if (solver == "kapproval-maxdisp") out = solve_kapproval_maxdisp(in);
                else if (solver == "sbucklin-small") out = solve_sbucklin_small_radius(in);
                else if (solver == "sbucklin-maxdisp") out = solve_sbucklin_maxdisp(in);
                else throw InvalidInput("unknown solver '" + solver + "'");
            }
            std::cout << "solver: " << used << "\n" << render_outcome(in, out);
            rc = out.yes ? kYes : kNo;
        } else if (*gen) {
            auto g = gflags.build();
            auto text = render_instance(g.instance);
            if (out_path.empty()) std::cout << text;
            else write_file(out_path, text);
            if (!names_path.empty()) write_file(names_path, g.render_name_map());
        } else if (*wit) {
            auto g = gflags.build();
            auto w = witness_from_assignment(g, parse_bits(assignment));
            std::cout << "satisfies: " << (w.satisfies ? "yes" : "no") << "\n";
            BriberyOutcome o;
            o.yes = w.check.ok;
            o.bribed = w.check.bribed;
            o.total_price = w.check.cost;
            o.witness = w.profile;
            if (!w.check.ok) {
                std::cout << "valid: no (" << w.check.reason << ")\n";
                o.yes = true;  // still print the profile for inspection
                auto block = render_outcome(g.instance, o);
                std::cout << block.substr(block.find('\n') + 1);
                return kNo;
            }
            std::cout << render_outcome(g.instance, o);
        } else if (*ver) {
            auto in = parse_instance(read_file(inst_path));
            auto w = parse_witness_block(read_file(witness_path), in.profile.alts);
            auto v = verify_witness(in, w);
            if (v.ok) {
                std::cout << "valid: yes\ncost: " << v.cost << "\nbribed:";
                for (int i : v.bribed) std::cout << " " << i;
                std::cout << "\n";
            } else {
                std::cout << "valid: no\nreason: " << v.reason << "\n";
                rc = kNo;
            }
        } else if (*wmg) {
            WmgTarget t;
            t.core = core;
            t.K = K;
            t.fillers = fillers;
            std::stringstream rows(margins);
            for (std::string row; std::getline(rows, row, ';');) {
                auto r = parse_matrix_row(row);
                t.z.insert(t.z.end(), r.begin(), r.end());
            }
            auto p = realize_wmg(t);
            std::cout << "alternatives:";
            for (const auto& nm : p.alts.names()) std::cout << " " << nm;
            std::cout << "\n";
            for (const auto& q : p.prefs) std::cout << "pref: " << render_preference(q, p.alts) << "\n";
        } else if (*dump) {
            auto in = parse_instance(read_file(inst_path));
            std::vector<GuessNetwork> nets;
            switch (route(in).route) {
                case Route::Plurality: nets = plurality_networks(in); break;
                case Route::Veto: nets = veto_networks(in); break;
                case Route::KappSmallRadius: nets = kapproval_small_radius_networks(in); break;
                case Route::KappMaxdisp: nets = kapproval_maxdisp_networks(in); break;
                case Route::SbucklinSmallRadius: nets = sbucklin_small_radius_networks(in); break;
                case Route::SbucklinMaxdisp: nets = sbucklin_maxdisp_networks(in); break;
                default: throw UnsupportedParameters("no flow solver covers this instance");
            }
            for (const auto& g : nets) {
                if (only_guess >= 0 && g.guess != only_guess) continue;
                std::cout << "# " << g.label << " value " << g.value << "\n" << g.net.dump();
            }
        }
    } catch (const ResourceExceeded& e) {
        std::cerr << "resource limit (" << e.limit << "): " << e.what() << "\n";
        return kResource;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const UnsupportedParameters& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUsage;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return rc;
}
