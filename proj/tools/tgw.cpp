// Command-line front end: graphs, ranks, Hurwitz numbers, covers and Weierstrass point counts.
#include "tgw/cover.hpp"
#include "tgw/divisors.hpp"
#include "tgw/enumeration.hpp"
#include "tgw/error.hpp"
#include "tgw/hurwitz.hpp"
#include "tgw/io.hpp"
#include "tgw/weierstrass.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

using namespace tgw;
using io::Json;

namespace {

struct Common {
    bool pretty = false;
    int workers = 0;
    std::string out;
};

struct GraphSource {
    std::string graph;
    std::string family;
    int genus = 2;
    std::string lengths;
    std::uint64_t seed = 1;
    bool seeded = false;
};

void add_graph_options(CLI::App* cmd, GraphSource& src) {
    cmd->add_option("--graph", src.graph, "graph JSON file");
    cmd->add_option("--family", src.family, "named graph: dumbbell, O, T, circle, theta, k4");
    cmd->add_option("--genus", src.genus, "genus for the O and T families");
    cmd->add_option("--lengths", src.lengths, "edge lengths \"p/q,...\" in edge order");
    cmd->add_option("--seed", src.seed, "seed for generic lengths")->each([&](const std::string&) { src.seeded = true; });
}

DiscreteGraph family_graph(const std::string& name, int genus) {
    if (name == "dumbbell") return families::dumbbell();
    if (name == "O") return families::loops_on_caterpillar(genus);
    if (name == "T") return families::caterpillar_tree(genus);
    if (name == "circle") return families::circle();
    if (name == "theta") return families::theta();
    if (name == "k4") return families::k4();
    throw Error(ErrorKind::UsageError, "unknown family '" + name + "'");
}

std::vector<Rational> parse_lengths(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
    return out;
}

// Lengths come from --lengths, then from the file, then from the seeded sampler.
MetricGraph load_metric(const GraphSource& src, std::optional<std::uint64_t>& usedSeed) {
    if (src.graph.empty() == src.family.empty()) throw Error(ErrorKind::UsageError, "give exactly one of --graph and --family");
    DiscreteGraph g;
    Json j;
    if (!src.graph.empty()) {
        j = io::read_json_file(src.graph);
        if (src.lengths.empty() && j.contains("lengths") && !src.seeded) return io::metric_graph_from_json(j);
        g = io::graph_from_json(j);
    } else {
        g = family_graph(src.family, src.genus);
    }
    std::vector<Rational> lengths;
    if (!src.lengths.empty()) {
        lengths = parse_lengths(src.lengths);
        if (lengths.size() != g.edges().size())
            throw Error(ErrorKind::UsageError, "expected " + std::to_string(g.edges().size()) + " lengths");
    } else {
        lengths = generic_lengths(static_cast<int>(g.edges().size()), src.seed);
        usedSeed = src.seed;
    }
    return MetricGraph(std::move(g), std::move(lengths));
}

DiscreteGraph load_graph(const GraphSource& src) {
    if (src.graph.empty() == src.family.empty()) throw Error(ErrorKind::UsageError, "give exactly one of --graph and --family");
    if (!src.graph.empty()) return io::graph_from_json(io::read_json_file(src.graph));
    return family_graph(src.family, src.genus);
}

Json parse_json_arg(const std::string& s) {
    std::filesystem::path p(s);
    if (std::filesystem::exists(p)) return io::read_json_file(s);
    try {
        return Json::parse(s);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::ParseError, "'" + s + "' is neither a file nor JSON");
    }
}

void emit(const Common& c, const Json& j, const std::string& pretty) {
    std::string text = j.dump(2) + "\n";
    if (!c.out.empty()) io::write_text_file(c.out, text);
    if (c.pretty) std::cout << pretty;
    else if (c.out.empty()) std::cout << text;
}

std::string matrix_table(const RationalMatrix& a) {
    std::ostringstream out;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        out << "  ";
        for (Eigen::Index c = 0; c < a.cols(); ++c) out << (c ? " " : "") << to_string(a(r, c));
        out << "\n";
    }
    return out.str();
}

std::string weight_table(const WeightReport& w) {
    std::ostringstream out;
    out << "vertex  H(V)  CF(V)\n";
    for (const auto& v : w.perVertex) out << v.vertex << "  " << to_string(v.hurwitz) << "  " << v.cf << "\n";
    out << "edge product " << w.edgeProduct << "\nlcm denominator " << w.lcmDenominator << "\nweight "
        << to_string(w.weight) << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tropical Weierstrass point toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_flag("--pretty", common.pretty, "human-readable tables instead of JSON");
    app.add_option("--workers", common.workers, "worker threads (default: TW_WORKERS or 1)");
    app.add_option("--out", common.out, "write JSON here instead of stdout");

    int legs = 4;
    std::string treeMode = "labelled";
    auto* trees = app.add_subcommand("trees", "trivalent trees with marked legs");
    trees->add_option("--legs", legs, "number of legs")->required();
    trees->add_option("--mode", treeMode, "labelled or interchangeable")->check(CLI::IsMember({"labelled", "interchangeable"}));

    GraphSource rankSrc;
    std::string divisorArg, candidates = "subdivision";
    long long budget = 5000;
    auto* rankCmd = app.add_subcommand("rank", "Baker-Norine rank of a divisor");
    add_graph_options(rankCmd, rankSrc);
    rankCmd->add_option("--divisor", divisorArg, "divisor JSON (file or inline)")->required();
    rankCmd->add_option("--budget", budget, "subdivision vertex budget");
    rankCmd->add_option("--candidates", candidates, "subdivision or model")->check(CLI::IsMember({"subdivision", "model"}));

    GraphSource wSrc;
    std::string pointArg;
    auto* wCmd = app.add_subcommand("weierstrass", "test whether a point is Weierstrass");
    add_graph_options(wCmd, wSrc);
    wCmd->add_option("--at", pointArg, "vertex id or {\"edge\":id,\"offset\":\"p/q\"}")->required();
    wCmd->add_option("--budget", budget, "subdivision vertex budget");

    int hd = 0;
    std::string profiles, coverArg;
    auto* hCmd = app.add_subcommand("hurwitz", "genus-0 Hurwitz numbers and cover weights");
    hCmd->add_option("--d", hd, "degree");
    hCmd->add_option("--profiles", profiles, "\"(2,1,1);(2,1,1);(4)\"");
    hCmd->add_option("--cover", coverArg, "cover JSON: print its weight report");

    auto* covers = app.add_subcommand("covers", "admissible covers");
    covers->require_subcommand(1);
    std::string validateArg;
    auto* cValidate = covers->add_subcommand("validate", "validate a cover and print its matrices");
    cValidate->add_option("--cover", validateArg, "cover JSON")->required();
    int cGenus = 2;
    std::string cMode = "quotient", dotDir;
    auto* cEnum = covers->add_subcommand("enumerate", "all Weierstrass-profile covers of genus g");
    cEnum->add_option("--genus", cGenus, "genus")->required();
    cEnum->add_option("--mode", cMode, "quotient or labelled")->check(CLI::IsMember({"quotient", "labelled"}));
    cEnum->add_option("--dot-dir", dotDir, "write source/target DOT files here");

    auto* gwp = app.add_subcommand("gwp", "geometric Weierstrass points");
    gwp->require_subcommand(1);
    GraphSource gSrc;
    bool verifyRank = false;
    std::string dotOut;
    auto* gCount = gwp->add_subcommand("count", "count geometric Weierstrass points with multiplicity");
    add_graph_options(gCount, gSrc);
    gCount->add_flag("--verify-rank", verifyRank, "check every point with the rank test");
    gCount->add_option("--budget", budget, "subdivision vertex budget for the rank test");
    gCount->add_option("--dot", dotOut, "write the graph with annotated points as DOT");
    int tGenus = 2;
    std::string tMode = "quotient";
    auto* gTotal = gwp->add_subcommand("total", "pushforward total over O_g");
    gTotal->add_option("--genus", tGenus, "genus")->required();
    gTotal->add_option("--mode", tMode, "quotient or labelled")->check(CLI::IsMember({"quotient", "labelled"}));

    GraphSource eSrc;
    auto* exportCmd = app.add_subcommand("export", "DOT export of a graph");
    add_graph_options(exportCmd, eSrc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        if (*trees) {
            auto list = enumerate_trivalent_trees(legs, treeMode == "labelled" ? TreeMode::Labelled : TreeMode::Interchangeable);
            Json j = Json::array();
            Integer sum = 0;
            for (const auto& t : list) {
                j.push_back(Json{{"tree", io::to_json(t.tree)}, {"orbitSize", io::integer_json(t.orbitSize)}});
                sum += t.orbitSize;
            }
            std::ostringstream p;
            p << list.size() << " trees with " << legs << " legs (" << treeMode << "), " << sum << " labelled\n";
            emit(common, j, p.str());
        } else if (*rankCmd) {
            std::optional<std::uint64_t> seed;
            auto m = load_metric(rankSrc, seed);
            auto d = io::divisor_from_json(m, parse_json_arg(divisorArg));
            RankOptions ro;
            ro.maxVertices = budget;
            ro.candidates = candidates == "model" ? Candidates::ModelVertices : Candidates::Subdivision;
            long long r = rank(m, d, ro);
            emit(common, Json{{"degree", d.degree()}, {"rank", r}}, "rank " + std::to_string(r) + "\n");
        } else if (*wCmd) {
            std::optional<std::uint64_t> seed;
            auto m = load_metric(wSrc, seed);
            Point x = io::point_from_json(m, parse_json_arg(pointArg));
            Divisor d;
            d.add(x, m.genus());
            RankOptions ro;
            ro.maxVertices = budget;
            long long r = rank(m, d, ro);
            emit(common, Json{{"at", io::to_json(m, x)}, {"rank", r}, {"weierstrass", r >= 1}},
                 std::string(r >= 1 ? "Weierstrass" : "not Weierstrass") + " (rank " + std::to_string(r) + ")\n");
        } else if (*hCmd) {
            if (!coverArg.empty()) {
                Cover c = io::cover_from_json(parse_json_arg(coverArg));
                auto w = standard_weight(c);
                Json per = Json::array();
                for (const auto& v : w.perVertex)
                    per.push_back(Json{{"vertex", c.source.label(v.vertex)},
                                       {"hurwitz", io::rational_json(v.hurwitz)},
                                       {"cf", io::integer_json(v.cf)}});
                emit(common,
                     Json{{"weight", io::rational_json(w.weight)},
                          {"vertices", per},
                          {"edgeProduct", io::integer_json(w.edgeProduct)},
                          {"lcmDenominator", io::integer_json(w.lcmDenominator)}},
                     weight_table(w));
            } else {
                if (hd <= 0 || profiles.empty()) throw Error(ErrorKind::UsageError, "hurwitz needs --d and --profiles, or --cover");
                auto ps = parse_profiles(profiles);
                Rational h = hurwitz_genus0(hd, ps);
                Json pj = Json::array();
                for (const auto& p : ps) pj.push_back(to_string(p));
                emit(common, Json{{"d", hd}, {"profiles", pj}, {"hurwitz", io::rational_json(h)}}, to_string(h) + "\n");
            }
        } else if (*cValidate) {
            Cover c = io::cover_from_json(parse_json_arg(validateArg));
            Json rh = Json::array();
            std::ostringstream p;
            p << "degree " << c.global_degree() << "\nvertex  RH\n";
            for (const auto& [v, r] : riemann_hurwitz_residuals(c)) {
                rh.push_back(Json{{"vertex", c.source.label(v)}, {"residual", r}});
                p << c.source.label(v) << "  " << r << "\n";
            }
            auto F = f_matrix(c), I = i_matrix(c);
            p << "F\n" << matrix_table(F) << "I\n" << matrix_table(I);
            emit(common,
                 Json{{"degree", c.global_degree()},
                      {"riemannHurwitz", rh},
                      {"F", io::to_json(F)},
                      {"I", io::to_json(I)},
                      {"lcm", io::to_json(lcm_matrix(c))}},
                 p.str());
        } else if (*cEnum) {
            auto res = enumerate_all(cGenus, cMode == "quotient" ? EnumerationMode::Quotient : EnumerationMode::Labelled,
                                     common.workers);
            if (!dotDir.empty()) {
                std::filesystem::create_directories(dotDir);
                for (std::size_t i = 0; i < res.covers.size(); ++i) {
                    auto base = (std::filesystem::path(dotDir) / ("cover" + std::to_string(i))).string();
                    io::write_text_file(base + "_source.dot", io::to_dot(res.covers[i].cover.source, "source"));
                    io::write_text_file(base + "_target.dot", io::to_dot(res.covers[i].cover.target, "target"));
                }
            }
            std::ostringstream p;
            int contributing = 0;
            for (const auto& r : res.covers) contributing += r.contributing;
            p << "genus " << cGenus << " (" << cMode << "): " << res.trees.size() << " trees, " << res.covers.size()
              << " covers, " << contributing << " contributing\n";
            emit(common, io::to_json(res), p.str());
        } else if (*gCount) {
            std::optional<std::uint64_t> seed;
            auto m = load_metric(gSrc, seed);
            GwpOptions opt;
            opt.verifyRank = verifyRank;
            opt.rankBudget = budget;
            opt.workers = common.workers;
            auto rep = count_gwp(m, opt);
            Json j = io::to_json(m, rep);
            if (seed) j["seed"] = *seed;
            std::map<Point, std::string> notes;
            for (const auto& [pt, mult] : rep.pointTable) notes[pt] = "x" + mult.str();
            if (!dotOut.empty()) io::write_text_file(dotOut, io::to_dot(m, notes, "gwp"));
            std::ostringstream p;
            p << "point  multiplicity\n";
            for (const auto& [pt, mult] : rep.pointTable) p << io::to_json(m, pt).dump() << "  " << mult << "\n";
            p << "total " << rep.total << " (expected " << rep.expected << ")" << (rep.certified ? ", certified" : "") << "\n";
            for (const auto& w : rep.warnings) p << "warning: " << w << "\n";
            emit(common, j, p.str());
        } else if (*gTotal) {
            auto mode = tMode == "quotient" ? EnumerationMode::Quotient : EnumerationMode::Labelled;
            MetricGraph m(families::loops_on_caterpillar(tGenus), generic_lengths(3 * tGenus - 3, 1));
            Integer total = pushforward_total(m, enumerate_all(tGenus, mode, common.workers));
            Integer expected = expected_pushforward_total(tGenus);
            emit(common,
                 Json{{"genus", tGenus}, {"total", io::integer_json(total)}, {"expected", io::integer_json(expected)}},
                 "total " + total.str() + " (expected " + expected.str() + ")\n");
        } else if (*exportCmd) {
            std::string text;
            if (!eSrc.lengths.empty() || (!eSrc.graph.empty() && io::read_json_file(eSrc.graph).contains("lengths"))) {
                std::optional<std::uint64_t> seed;
                text = io::to_dot(load_metric(eSrc, seed));
            } else {
                text = io::to_dot(load_graph(eSrc));
            }
            if (!common.out.empty()) io::write_text_file(common.out, text);
            else std::cout << text;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::UsageError) {
            std::cerr << app.help();
            return 2;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
