// fpp: first-passage-percolation experiments on Cayley graphs of Z^d.
//
// Every subcommand writes its outputs into --out (CSV/JSON files plus a
// manifest.json) and prints a short summary to stdout. Outputs are
// deterministic functions of the configuration: rerunning with the same
// config hash and any thread count reproduces the numeric columns byte for
// byte.

#include <chrono>
#include <cinttypes>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpp/average_metric.hpp"
#include "fpp/bounds.hpp"
#include "fpp/cloud.hpp"
#include "fpp/geodesicity.hpp"
#include "fpp/metric_engine.hpp"
#include "fpp/parallel.hpp"
#include "fpp/shape.hpp"
#include "fpp/suite.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace fpp;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Point parse_point(const std::string& text) {
    Point p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            p.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw ConfigError("bad integer coordinate '" + item + "'");
        }
    }
    if (p.empty()) throw ConfigError("empty point '" + text + "'");
    return p;
}

std::vector<Point> parse_points(const std::string& text) {
    std::vector<Point> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (!item.empty()) out.push_back(parse_point(item));
    }
    if (out.empty()) throw ConfigError("empty point list '" + text + "'");
    return out;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty number list '" + text + "'");
    return out;
}

// Law spec grammar: constant:C | uniform:LO:HI | exp:RATE | atom:P0:VALUE:<rest>
WeightLaw parse_law(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw ConfigError("empty law spec");
    auto want = [&](std::size_t n) {
        if (parts.size() < n) throw ConfigError("law spec '" + spec + "' is missing parameters");
    };
    auto at = [&](std::size_t i) {
        try {
            return std::stod(parts[i]);
        } catch (const std::exception&) {
            throw ConfigError("bad law parameter '" + parts[i] + "'");
        }
    };
    if (parts[0] == "constant") {
        want(2);
        return WeightLaw::constant(at(1));
    }
    if (parts[0] == "uniform") {
        want(3);
        return WeightLaw::uniform(at(1), at(2));
    }
    if (parts[0] == "exp") {
        want(2);
        return WeightLaw::exponential(at(1));
    }
    if (parts[0] == "atom") {
        want(4);
        std::string rest;
        for (std::size_t i = 3; i < parts.size(); ++i) {
            if (i > 3) rest += ":";
            rest += parts[i];
        }
        return WeightLaw::atom_mixture(at(1), at(2), parse_law(rest));
    }
    throw ConfigError("unknown law kind '" + parts[0] + "'");
}

std::uint64_t hash_string(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) h = mix64(h ^ c);
    return h;
}

struct Cli {
    std::string command;
    std::string out_dir = "out";
    std::uint64_t seed = 2026;
    std::string law_spec = "uniform:1:2";
    std::size_t dim = 2;
    std::string gens; // "1,0;0,1;..." (symmetrized); empty = standard
    std::size_t replicas = 32;
    std::size_t vertex_budget = 8'000'000;
    int threads = 0; // 0 = leave FPP_THREADS / hardware default alone

    // per-subcommand knobs
    double radius = 8;
    double r2 = 16;
    std::string from = "0,0";
    std::string to = "8,0";
    double lambda = 0.5;
    std::int64_t search_radius = 2;
    std::size_t parts = 3;
    double profile_c = 1.0;
    double alpha0 = 8.0;
    std::string oracle_kind = "word"; // word | l1 | l2 | linf | dbar
    std::string radii = "8,16,32";
    std::string thresholds = "0.5,1,2,4";
    std::string cloud = "1,0;0,1;-1,0;0,-1";
    std::size_t power = 3;
    std::size_t degree = 4;
    bool quick = false;

    std::vector<std::string> outputs;

    CayleyLattice make_lattice() const {
        if (gens.empty()) return CayleyLattice::standard(dim);
        return CayleyLattice(dim, parse_points(gens), /*symmetrize=*/true);
    }

    std::uint64_t config_hash() const {
        std::uint64_t h = mix64(0x66707031ull);
        h = hash_string(h, command);
        h = mix64(h ^ seed);
        for (const std::string& s :
             {law_spec, gens, from, to, oracle_kind, radii, thresholds, cloud}) {
            h = hash_string(h, s);
        }
        for (double v : {radius, r2, lambda, profile_c, alpha0}) {
            h = hash_string(h, num(v));
        }
        for (std::size_t v : {dim, replicas, parts, power, degree,
                              static_cast<std::size_t>(search_radius),
                              static_cast<std::size_t>(quick)}) {
            h = mix64(h ^ v);
        }
        return h;
    }

    std::ofstream open_output(const std::string& name) {
        fs::create_directories(out_dir);
        std::string path = (fs::path(out_dir) / name).string();
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open output file " + path);
        outputs.push_back(name);
        return out;
    }

    void write_json(const std::string& name, const json& doc) {
        auto out = open_output(name);
        out << doc.dump(2) << "\n";
    }

    void write_manifest(double seconds) {
        json doc;
        char hash[32];
        std::snprintf(hash, sizeof hash, "%016" PRIx64, config_hash());
        doc["version"] = kVersion;
        doc["command"] = command;
        doc["config_hash"] = hash;
        doc["outputs"] = outputs;
        doc["seconds"] = seconds;
        doc["threads"] = thread_count();
        // manifest is the only file carrying wall-clock data; it is excluded
        // from byte-level reproducibility comparisons
        fs::create_directories(out_dir);
        std::ofstream out((fs::path(out_dir) / "manifest.json").string());
        out << doc.dump(2) << "\n";
    }
};

struct OracleBundle {
    CayleyLattice lattice;
    std::unique_ptr<MetricOracle> oracle;
};

OracleBundle make_oracle(const Cli& cli) {
    OracleBundle bundle{cli.make_lattice(), nullptr};
    SearchOptions opts;
    opts.vertex_budget = cli.vertex_budget;
    if (cli.oracle_kind == "word") {
        bundle.oracle = std::make_unique<WordMetricOracle>(bundle.lattice);
    } else if (cli.oracle_kind == "l1") {
        bundle.oracle = std::make_unique<NormOracle>(bundle.lattice, NormOracle::Norm::L1);
    } else if (cli.oracle_kind == "l2") {
        bundle.oracle = std::make_unique<NormOracle>(bundle.lattice, NormOracle::Norm::L2);
    } else if (cli.oracle_kind == "linf") {
        bundle.oracle = std::make_unique<NormOracle>(bundle.lattice, NormOracle::Norm::Linf);
    } else if (cli.oracle_kind == "dbar") {
        bundle.oracle = std::make_unique<MeanDistanceOracle>(
            bundle.lattice, parse_law(cli.law_spec), cli.seed, cli.replicas, opts);
    } else {
        throw ConfigError("unknown oracle kind '" + cli.oracle_kind + "'");
    }
    return bundle;
}

json point_json(const Point& p) { return json(p); }

int cmd_ball(Cli& cli) {
    auto lattice = cli.make_lattice();
    OmegaField field(parse_law(cli.law_spec), cli.seed, lattice);
    SearchOptions opts;
    opts.vertex_budget = cli.vertex_budget;
    Point center(cli.dim, 0);
    auto ball = omega_ball(field, center, cli.radius, opts);
    auto out = cli.open_output("ball.csv");
    for (std::size_t i = 0; i < cli.dim; ++i) out << "x" << (i + 1) << ",";
    out << "dist\n";
    for (const auto& p : ball.points) {
        for (auto c : p) out << c << ",";
        out << num(ball.dist.at(p)) << "\n";
    }
    std::cout << "ball: " << ball.points.size() << " points within omega-radius " << cli.radius
              << "\n";
    return 0;
}

int cmd_avgdist(Cli& cli) {
    auto lattice = cli.make_lattice();
    SearchOptions opts;
    opts.vertex_budget = cli.vertex_budget;
    auto est = mean_distance(lattice, parse_point(cli.from), parse_point(cli.to),
                             parse_law(cli.law_spec), cli.seed, cli.replicas, false, opts);
    auto out = cli.open_output("avgdist.csv");
    out << "x,y,replicas,mean,std_error\n";
    out << "\"" << cli.from << "\",\"" << cli.to << "\"," << est.replicas << "," << num(est.mean)
        << "," << num(est.std_error) << "\n";
    std::cout << "avgdist: " << num(est.mean) << " +/- " << num(est.std_error) << " ("
              << est.replicas << " replicas)\n";
    return 0;
}

int cmd_fluct(Cli& cli) {
    auto lattice = cli.make_lattice();
    std::int64_t r = static_cast<std::int64_t>(cli.radius);
    Point e1(cli.dim, 0), diag(cli.dim, 0);
    e1[0] = r;
    for (auto& c : diag) c = r / 2;
    std::vector<std::pair<Point, Point>> pairs{{Point(cli.dim, 0), e1}};
    if (cli.dim >= 2 && r >= 2) pairs.push_back({Point(cli.dim, 0), diag});
    auto table = fluctuation_table(lattice, pairs, parse_law(cli.law_spec), cli.seed,
                                   cli.replicas, parse_doubles(cli.thresholds));
    auto out = cli.open_output("fluct.csv");
    out << "pair,x,y,word_dist,mean,sample_std,threshold,exceedance\n";
    for (std::size_t p = 0; p < table.rows.size(); ++p) {
        const auto& row = table.rows[p];
        for (std::size_t j = 0; j < table.thresholds.size(); ++j) {
            out << p << ",\"" << point_to_string(row.x) << "\",\"" << point_to_string(row.y)
                << "\"," << row.word_dist << "," << num(row.mean) << "," << num(row.sample_std)
                << "," << num(table.thresholds[j]) << "," << num(row.exceedance[j]) << "\n";
        }
    }
    auto [c1, c2] = fit_talagrand_constants(table);
    json summary{{"replicas", table.replicas},
                 {"pairs", table.rows.size()},
                 {"fit_c1", c1},
                 {"fit_c2", c2}};
    cli.write_json("fluct.json", summary);
    std::cout << "fluct: fitted envelope constants c1 = " << num(c1) << ", c2 = " << num(c2)
              << "\n";
    return 0;
}

int cmd_sagstar(Cli& cli) {
    auto bundle = make_oracle(cli);
    auto res = sagstar_deficiency(parse_point(cli.from), parse_point(cli.to), cli.lambda,
                                  *bundle.oracle, cli.search_radius);
    json doc{{"z", point_json(res.z)},
             {"eps", res.eps},
             {"score", res.score},
             {"std_error", res.std_error},
             {"lambda", cli.lambda},
             {"oracle", bundle.oracle->describe()}};
    cli.write_json("sagstar.json", doc);
    std::cout << "sagstar: z = " << point_to_string(res.z) << ", eps = " << num(res.eps) << "\n";
    return 0;
}

int cmd_sag_seq(Cli& cli) {
    auto bundle = make_oracle(cli);
    auto res = sag_sequence(parse_point(cli.from), parse_point(cli.to), cli.parts,
                            *bundle.oracle, cli.search_radius, cli.alpha0);
    json points = json::array();
    for (const auto& p : res.points) points.push_back(point_json(p));
    json steps = json::array();
    for (const auto& d : res.step_distances) {
        steps.push_back({{"value", d.value}, {"std_error", d.std_error}});
    }
    json doc{{"points", points},
             {"step_distances", steps},
             {"total", res.total},
             {"deficiency", res.deficiency},
             {"std_error", res.std_error},
             {"oracle", bundle.oracle->describe()}};
    cli.write_json("sag-seq.json", doc);
    std::cout << "sag-seq: " << res.points.size() << " points, deficiency = "
              << num(res.deficiency) << "\n";
    return 0;
}

int cmd_monotone(Cli& cli) {
    auto bundle = make_oracle(cli);
    auto profile = SagProfile::sqrt_over_log(cli.profile_c, cli.alpha0);
    Point origin(cli.dim, 0);
    auto report = monotone_ball_check(origin, cli.radius, profile, *bundle.oracle);
    const char* status = report.status == MonotoneBallReport::Status::Holds    ? "holds"
                         : report.status == MonotoneBallReport::Status::Fails ? "fails"
                                                                              : "skipped";
    json doc{{"status", status},
             {"worst_defect", report.worst_defect},
             {"allowance", report.allowance},
             {"radius", cli.radius},
             {"oracle", bundle.oracle->describe()}};
    cli.write_json("monotone.json", doc);
    std::cout << "monotone: " << status << " (worst defect " << num(report.worst_defect)
              << ", allowance " << num(report.allowance) << ")\n";
    return report.status == MonotoneBallReport::Status::Fails ? 1 : 0;
}

int cmd_hull_check(Cli& cli) {
    auto k = PointCloud::from_points(cli.dim, parse_points(cli.cloud));
    auto report = hull_identity_check(k, cli.power, direction_set(cli.dim, 64));
    json doc{{"n", report.n},
             {"support_gap", report.support_gap},
             {"dh_power", report.dh_power},
             {"dh_base", report.dh_base},
             {"identity_holds", report.identity_holds},
             {"inequality_holds", report.inequality_holds}};
    cli.write_json("hull-check.json", doc);
    std::cout << "hull-check: identity " << (report.identity_holds ? "holds" : "fails")
              << ", contraction " << (report.inequality_holds ? "holds" : "fails") << "\n";
    return (report.identity_holds && report.inequality_holds) ? 0 : 1;
}

int cmd_cauchy(Cli& cli) {
    auto bundle = make_oracle(cli);
    double defect = cauchy_defect(*bundle.oracle, cli.radius, cli.r2);
    json doc{{"r1", cli.radius},
             {"r2", cli.r2},
             {"defect", defect},
             {"oracle", bundle.oracle->describe()}};
    cli.write_json("cauchy.json", doc);
    std::cout << "cauchy: defect(" << cli.radius << ", " << cli.r2 << ") = " << num(defect)
              << "\n";
    return 0;
}

int cmd_shape(Cli& cli) {
    auto bundle = make_oracle(cli);
    auto radii = parse_doubles(cli.radii);
    auto dirs = direction_set(cli.dim, 64);
    auto norm_est = limit_norm_estimate(*bundle.oracle, radii.back(), dirs);
    auto series = shape_error_series(*bundle.oracle, radii, norm_est);
    auto out = cli.open_output("shape.csv");
    out << "n,delta_in,delta_out,stderr\n";
    for (const auto& e : series.entries) {
        out << num(e.n) << "," << num(e.delta_in) << "," << num(e.delta_out) << ","
            << num(e.std_error) << "\n";
    }
    json doc{{"fit_c", series.fit_c},
             {"fit_residual", series.fit_residual},
             {"exponent", series.exponent},
             {"oracle", bundle.oracle->describe()},
             {"radii", radii}};
    cli.write_json("shape.json", doc);
    std::cout << "shape: fit c = " << num(series.fit_c) << ", exploratory exponent = "
              << num(series.exponent) << "\n";
    return 0;
}

int cmd_certify(Cli& cli) {
    auto cert = lower_bound_certificate(parse_law(cli.law_spec), cli.degree);
    auto status_name = [](LowerBoundCertificate::Status s) {
        return s == LowerBoundCertificate::Status::Valid ? "Valid" : "HypothesisViolated";
    };
    json doc{{"degree", cert.degree},
             {"a", cert.a},
             {"delta", cert.delta},
             {"lambda", cert.lambda},
             {"epsilon", cert.epsilon},
             {"a_prime", cert.a_prime},
             {"rho", cert.rho},
             {"r0", cert.r0},
             {"trivial_bound", cert.trivial_bound},
             {"a_doubleprime", cert.a_doubleprime},
             {"path_route_status", status_name(cert.path_route_status)},
             {"status", status_name(cert.status)},
             {"note", cert.note}};
    cli.write_json("certify.json", doc);
    std::cout << "certify: " << status_name(cert.status) << ", a'' = " << num(cert.a_doubleprime)
              << "\n";
    return 0;
}

int cmd_reproduce(Cli& cli) {
    SuiteOptions options;
    options.seed = cli.seed;
    options.quick = cli.quick;
    auto checks = run_replication_suite(options);
    auto report = cli.open_output("report.csv");
    report << "id,name,pass,metric,value\n";
    bool all_pass = true;
    json doc = json::array();
    for (const auto& check : checks) {
        for (const auto& [key, value] : check.metrics) {
            report << check.id << "," << check.name << "," << (check.pass ? 1 : 0) << "," << key
                   << "," << num(value) << "\n";
        }
        json metrics = json::object();
        for (const auto& [key, value] : check.metrics) metrics[key] = value;
        doc.push_back({{"id", check.id},
                       {"name", check.name},
                       {"pass", check.pass},
                       {"detail", check.detail},
                       {"metrics", metrics},
                       {"seconds", check.seconds}});
        std::cout << check.id << " " << check.name << ": " << (check.pass ? "PASS" : "FAIL")
                  << " — " << check.detail << "\n";
        all_pass = all_pass && check.pass;
    }
    cli.write_json("reproduce.json", doc);
    std::cout << (all_pass ? "reproduce: all checks passed" : "reproduce: FAILURES present")
              << "\n";
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    Cli cli;
    CLI::App app{"first-passage percolation laboratory on Cayley graphs of Z^d"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key = value config file; flags override");
    app.add_option("--seed", cli.seed, "base RNG seed (64-bit unsigned)");
    app.add_option("--law", cli.law_spec,
                   "edge-weight law: constant:C | uniform:LO:HI | exp:RATE | atom:P0:V:<rest>");
    app.add_option("--dim", cli.dim, "lattice dimension d");
    app.add_option("--gens", cli.gens, "generators 'x,y;x,y;...' (symmetrized); default axes");
    app.add_option("--out", cli.out_dir, "output directory");
    app.add_option("--replicas", cli.replicas, "Monte Carlo replica count");
    app.add_option("--vertex-budget", cli.vertex_budget, "search vertex budget");
    app.add_option("--threads", cli.threads, "worker threads (default FPP_THREADS or cores)");

    auto* ball = app.add_subcommand("ball", "omega-ball around the origin as CSV");
    ball->add_option("--radius", cli.radius, "omega radius");
    auto* avgdist = app.add_subcommand("avgdist", "Monte Carlo average distance");
    avgdist->add_option("--x", cli.from, "source point 'a,b'");
    avgdist->add_option("--y", cli.to, "target point 'a,b'");
    auto* fluct = app.add_subcommand("fluct", "fluctuation exceedance table");
    fluct->add_option("--radius", cli.radius, "pair distance r");
    fluct->add_option("--thresholds", cli.thresholds, "comma-separated deviations u");
    auto* sagstar = app.add_subcommand("sagstar", "near-midpoint deficiency");
    sagstar->add_option("--from", cli.from, "point x");
    sagstar->add_option("--to", cli.to, "point y");
    sagstar->add_option("--lambda", cli.lambda, "convex weight in [0,1]");
    sagstar->add_option("--search-radius", cli.search_radius, "word radius of the scan");
    sagstar->add_option("--oracle", cli.oracle_kind, "word | l1 | l2 | linf | dbar");
    auto* sagseq = app.add_subcommand("sag-seq", "near-equipartition sequence");
    sagseq->add_option("--from", cli.from, "point x");
    sagseq->add_option("--to", cli.to, "point y");
    sagseq->add_option("--parts", cli.parts, "number of segments m");
    sagseq->add_option("--search-radius", cli.search_radius, "word radius of the scan");
    sagseq->add_option("--alpha0", cli.alpha0, "validity threshold");
    sagseq->add_option("--oracle", cli.oracle_kind, "word | l1 | l2 | linf | dbar");
    auto* monotone = app.add_subcommand("monotone", "annulus absorption check");
    monotone->add_option("--radius", cli.radius, "ball radius r");
    monotone->add_option("--profile-c", cli.profile_c, "rate constant c in N(a)=c(a/log a)^1/2");
    monotone->add_option("--alpha0", cli.alpha0, "validity threshold");
    monotone->add_option("--oracle", cli.oracle_kind, "word | l1 | l2 | linf | dbar");
    auto* hull = app.add_subcommand("hull-check", "hull identity and contraction");
    hull->add_option("--k", cli.cloud, "symmetric cloud 'x,y;x,y;...'");
    hull->add_option("--n", cli.power, "Minkowski power n >= d");
    auto* cauchy = app.add_subcommand("cauchy", "rescaled-ball Hausdorff defect");
    cauchy->add_option("--r1", cli.radius, "first radius");
    cauchy->add_option("--r2", cli.r2, "second radius");
    cauchy->add_option("--oracle", cli.oracle_kind, "word | l1 | l2 | linf | dbar");
    auto* shape = app.add_subcommand("shape", "shape defect series");
    shape->add_option("--radii", cli.radii, "strictly ascending radii 'a,b,c'");
    shape->add_option("--oracle", cli.oracle_kind, "word | l1 | l2 | linf | dbar");
    auto* certify = app.add_subcommand("certify", "lower-bound certificate");
    certify->add_option("--degree", cli.degree, "graph degree q");
    auto* reproduce = app.add_subcommand("reproduce", "run the replication suite");
    reproduce->add_flag("--quick", cli.quick, "reduced replica counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cli.threads > 0) {
        setenv("FPP_THREADS", std::to_string(cli.threads).c_str(), 1);
    }

    using Clock = std::chrono::steady_clock;
    auto start = Clock::now();
    int rc = 0;
    try {
        if (ball->parsed()) {
            cli.command = "ball";
            rc = cmd_ball(cli);
        } else if (avgdist->parsed()) {
            cli.command = "avgdist";
            rc = cmd_avgdist(cli);
        } else if (fluct->parsed()) {
            cli.command = "fluct";
            rc = cmd_fluct(cli);
        } else if (sagstar->parsed()) {
            cli.command = "sagstar";
            rc = cmd_sagstar(cli);
        } else if (sagseq->parsed()) {
            cli.command = "sag-seq";
            rc = cmd_sag_seq(cli);
        } else if (monotone->parsed()) {
            cli.command = "monotone";
            rc = cmd_monotone(cli);
        } else if (hull->parsed()) {
            cli.command = "hull-check";
            rc = cmd_hull_check(cli);
        } else if (cauchy->parsed()) {
            cli.command = "cauchy";
            rc = cmd_cauchy(cli);
        } else if (shape->parsed()) {
            cli.command = "shape";
            rc = cmd_shape(cli);
        } else if (certify->parsed()) {
            cli.command = "certify";
            rc = cmd_certify(cli);
        } else if (reproduce->parsed()) {
            cli.command = "reproduce";
            rc = cmd_reproduce(cli);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    cli.write_manifest(std::chrono::duration<double>(Clock::now() - start).count());
    return rc;
}
