// hyper-ricci: command-line front end for the curvature, Kantorovich,
// resolvent and heat pipelines. Reports are deterministic for a fixed
// configuration and seed; all logging goes to stderr.

#include "hyper_ricci/curvature.hpp"
#include "hyper_ricci/graph_oracle.hpp"
#include "hyper_ricci/io.hpp"
#include "hyper_ricci/kantorovich.hpp"
#include "hyper_ricci/parallel.hpp"
#include "hyper_ricci/resolvent.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hr = hyper_ricci;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string input;
    std::string lambda_schedule;
    std::string mode = "float";
    std::string pairs;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    std::size_t restarts = 32;
    std::size_t fit_degree = 3;
    std::size_t cap = 8;
    // command-specific
    std::string lambda;
    std::string f;
    std::string times = "0.1,0.5,1";
    std::string check = "all";
    std::string mu;
    std::string method = "prox";
    std::size_t candidates = 16;
    std::size_t n = 4;
    std::string samples_out;
};

std::vector<std::string> split(const std::string& text, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

double parse_positive(const std::string& text, const char* what) {
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw hr::InvalidInput(std::string("cannot parse ") + what + " '" + text + "'");
    }
    if (!(v > 0.0)) throw hr::InvalidInput(std::string(what) + " must be positive");
    return v;
}

bool rational_mode(const RunConfig& c) { return c.mode == "rational"; }

hr::CurvatureOptions curvature_options(const RunConfig& c) {
    hr::CurvatureOptions o;
    if (!c.lambda_schedule.empty()) {
        o.lambdas.clear();
        for (const auto& s : split(c.lambda_schedule)) o.lambdas.push_back(parse_positive(s, "lambda"));
    }
    o.fit_degree = c.fit_degree;
    o.mode = rational_mode(c) ? hr::ArithmeticMode::Rational : hr::ArithmeticMode::Float;
    o.cap = c.cap;
    o.restarts = c.restarts;
    o.seed = c.seed;
    o.threads = c.threads;
    return o;
}

std::vector<std::pair<hr::VertexIndex, hr::VertexIndex>> select_pairs(const hr::HypergraphSystem& s,
                                                                      const std::string& selector) {
    std::vector<std::pair<hr::VertexIndex, hr::VertexIndex>> out;
    if (selector == "all" || selector == "adjacent") {
        // Hyperarcs make curvature depend on the order of the pair.
        const bool ordered = s.has_directed_edges();
        for (hr::VertexIndex a = 0; a < s.size(); ++a)
            for (hr::VertexIndex b = ordered ? 0 : a + 1; b < s.size(); ++b)
                if (a != b && (selector == "all" || s.adjacent(a, b))) out.emplace_back(a, b);
        return out;
    }
    const auto ids = split(selector);
    if (ids.size() != 2) throw hr::InvalidInput("--pairs expects all, adjacent or x,y");
    out.emplace_back(s.index_of(ids[0]), s.index_of(ids[1]));
    return out;
}

template <class S>
hr::BasicVertexFunction<S> parse_function(const hr::HypergraphSystem& s, const std::string& text) {
    const auto parts = split(text);
    if (parts.size() != s.size())
        throw hr::InvalidInput("--f needs " + std::to_string(s.size()) + " comma-separated values");
    hr::BasicVertexFunction<S> f(s.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        try {
            const hr::Rational q = hr::parse_rational(parts[i]);
            if constexpr (std::is_same_v<S, double>)
                f[i] = hr::to_double(q);
            else
                f[i] = q;
        } catch (const std::invalid_argument& e) {
            throw hr::InvalidInput(e.what());
        }
    }
    return f;
}

/// f = D phi with phi(v) = diam - d(v, v0): weighted 1-Lipschitz.
hr::VertexFunction distance_potential(const hr::HypergraphSystem& s, hr::VertexIndex v0) {
    hr::VertexFunction f(s.size());
    for (hr::VertexIndex v = 0; v < s.size(); ++v)
        f[v] = s.degree(v) * static_cast<double>(s.diameter() - s.distance(v, v0));
    return f;
}

/// "{a,b}>{c}" with vertex ids.
std::string region_string(const hr::HypergraphSystem& s, const hr::WeakOrder& order) {
    std::string out;
    for (std::size_t b = 0; b < order.block_count(); ++b) {
        if (b) out += ">";
        out += "{";
        bool first = true;
        for (hr::VertexIndex v : order.block(b)) {
            if (!first) out += ",";
            out += s.vertex_id(v);
            first = false;
        }
        out += "}";
    }
    return out;
}

std::string num(double v) { return hr::format_double(v); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

/// Rows of fixed-order columns; rendered as CSV or as a JSON array of objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    /// Columns whose cells are emitted as JSON numbers.
    std::vector<bool> numeric;

    void render_csv(std::ostream& out) const {
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
        out << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_escape(r[i]);
            out << "\n";
        }
    }
    ordered_json to_json() const {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json obj;
            for (std::size_t i = 0; i < columns.size(); ++i) {
                // Re-parse the 12-digit text so JSON and CSV carry the same digits.
                auto parsed = numeric[i] ? ordered_json::parse(r[i], nullptr, false) : ordered_json();
                if (numeric[i] && !parsed.is_discarded() && parsed.is_number())
                    obj[columns[i]] = std::move(parsed);
                else if (r[i] == "true" || r[i] == "false")
                    obj[columns[i]] = r[i] == "true";
                else
                    obj[columns[i]] = r[i];
            }
            arr.push_back(std::move(obj));
        }
        return arr;
    }
};

class Output {
public:
    explicit Output(const RunConfig& c) : config_(c) {}

    std::ostream& stream() {
        if (config_.out.empty() || config_.out == "-") return std::cout;
        if (!file_.is_open()) {
            file_.open(config_.out, std::ios::binary);
            if (!file_) throw hr::InvalidInput("cannot write '" + config_.out + "'");
        }
        return file_;
    }

    /// One main table plus named extras; CSV puts the extras after a blank line.
    void emit(const std::string& name, const Table& main, const std::vector<std::pair<std::string, Table>>& extras = {},
              const ordered_json& meta = {}) {
        auto& out = stream();
        if (config_.format == "json") {
            ordered_json doc;
            doc["command"] = name;
            doc["mode"] = config_.mode;
            if (!meta.is_null())
                for (auto it = meta.begin(); it != meta.end(); ++it) doc[it.key()] = it.value();
            doc["rows"] = main.to_json();
            for (const auto& [key, table] : extras) doc[key] = table.to_json();
            out << doc.dump(2) << "\n";
        } else {
            main.render_csv(out);
            for (const auto& [key, table] : extras) {
                out << "\n";
                table.render_csv(out);
            }
        }
        out.flush();
    }

private:
    const RunConfig& config_;
    std::ofstream file_;
};

void run_curvature(const RunConfig& c) {
    const auto system = hr::load_system_file(c.input);
    const auto options = curvature_options(c);
    const auto pairs = select_pairs(system, c.pairs.empty() ? "adjacent" : c.pairs);
    std::vector<hr::CurvatureReport> reports(pairs.size());
    std::vector<hr::UpperBoundC> bounds(pairs.size());
    auto inner = options;
    inner.threads = 1;
    hr::parallel_for(pairs.size(), c.threads, [&](std::size_t i) {
        try {
            reports[i] = hr::estimate_kappa(system, pairs[i].first, pairs[i].second, inner);
        } catch (const hr::SolverError& e) {
            throw hr::SolverError("pair (" + system.vertex_id(pairs[i].first) + ", " +
                                  system.vertex_id(pairs[i].second) + "): " + e.what());
        }
        bounds[i] = hr::upper_bound_C(system, pairs[i].first, pairs[i].second, c.candidates, c.seed);
    });

    Table main{{"x", "y", "d", "kappa", "exact_kappa", "certified", "method", "kappa_lower", "kappa_upper",
                "C_upper", "fit_degree", "dropped"},
               {},
               {false, false, true, true, false, false, false, true, true, true, true, true}};
    Table samples{{"x", "y", "lambda", "kd", "kappa_lambda", "exact_kd"}, {}, {false, false, true, true, true, false}};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& r = reports[i];
        const std::string x = system.vertex_id(r.x), y = system.vertex_id(r.y);
        main.rows.push_back({x, y, std::to_string(r.distance), num(r.kappa),
                             r.exact_kappa ? hr::to_string(*r.exact_kappa) : "", r.certified ? "true" : "false",
                             r.method, num(r.kappa_lower), num(r.kappa_upper), num(bounds[i].value),
                             r.fit ? std::to_string(r.fit->degree) : "", std::to_string(r.dropped)});
        for (const auto& s : r.samples)
            samples.rows.push_back({x, y, num(s.lambda), num(s.kd), num(s.kappa_lambda), s.exact_kd});
    }
    Output out(c);
    if (!c.samples_out.empty()) {
        RunConfig side = c;
        side.out = c.samples_out;
        Output extra(side);
        extra.emit("curvature-samples", samples);
        out.emit("curvature", main);
    } else {
        out.emit("curvature", main, {{"samples", samples}});
    }
}

void run_kd(const RunConfig& c) {
    const auto system = hr::load_system_file(c.input);
    if (c.lambda.empty()) throw hr::InvalidInput("kd needs --lambda");
    const auto pairs = select_pairs(system, c.pairs.empty() ? "all" : c.pairs);
    hr::KDOptions kd_options{c.cap, 1};
    Table main{{"x", "y", "lambda", "kd", "upper_bound", "certified", "method"},
               {},
               {false, false, true, true, true, false, false}};
    std::vector<std::vector<std::string>> rows(pairs.size());
    hr::parallel_for(pairs.size(), c.threads, [&](std::size_t i) {
        const auto [x, y] = pairs[i];
        std::string value, method;
        bool certified = false;
        if (rational_mode(c)) {
            if (system.size() > c.cap) throw hr::InvalidInput("rational mode needs |V| <= cap");
            const auto r = hr::kd_exact<hr::Rational>(system, x, y, hr::parse_rational(c.lambda), kd_options);
            value = hr::to_string(r.value);
            certified = true;
            method = "region-lp";
        } else if (system.size() <= c.cap) {
            value = num(hr::kd_exact<double>(system, x, y, parse_positive(c.lambda, "lambda"), kd_options).value);
            certified = true;
            method = "region-lp";
        } else {
            hr::KDHeuristicOptions h;
            h.restarts = c.restarts;
            h.seed = c.seed;
            value = num(hr::kd_heuristic(system, x, y, parse_positive(c.lambda, "lambda"), h).value);
            method = "heuristic";
        }
        const double lambda = hr::to_double(hr::parse_rational(c.lambda));
        rows[i] = {system.vertex_id(x), system.vertex_id(y), c.lambda, value,
                   num(hr::kd_upper_bound(system, x, y, lambda)), certified ? "true" : "false", method};
    });
    main.rows = std::move(rows);
    if (rational_mode(c)) main.numeric[3] = false;

    Table metric{{"check", "ok", "detail"}, {}, {false, false, false}};
    if (c.pairs.empty() || c.pairs == "all") {
        const auto report = hr::kd_metric_check(system, parse_positive(c.lambda, "lambda"), 1e-8, kd_options);
        metric.rows.push_back({"metric", report.ok() ? "true" : "false", std::to_string(report.violations.size()) +
                                                                             " violations"});
        for (const auto& v : report.violations) metric.rows.push_back({"violation", "false", v});
    }
    Output(c).emit("kd", main, {{"metric_check", metric}});
}

void run_resolve(const RunConfig& c) {
    const auto system = hr::load_system_file(c.input);
    if (c.lambda.empty()) throw hr::InvalidInput("resolve needs --lambda");
    if (c.f.empty()) throw hr::InvalidInput("resolve needs --f");
    Table main{{"vertex", "f", "g", "residual"}, {}, {false, true, true, true}};
    ordered_json meta;
    if (rational_mode(c)) {
        const auto f = parse_function<hr::Rational>(system, c.f);
        const auto r = hr::resolve_region_exact<hr::Rational>(system, f, hr::parse_rational(c.lambda), {c.cap, 1e-10});
        for (hr::VertexIndex v = 0; v < system.size(); ++v)
            main.rows.push_back(
                {system.vertex_id(v), hr::to_string(f[v]), hr::to_string(r.g[v]), hr::to_string(r.residual[v])});
        main.numeric = {false, false, false, false};
        meta["method"] = hr::to_string(r.method);
        meta["optimality_gap"] = hr::to_string(r.optimality_gap);
        if (r.region) meta["region"] = region_string(system, *r.region);
    } else {
        const auto f = parse_function<double>(system, c.f);
        const double lambda = parse_positive(c.lambda, "lambda");
        hr::ResolventResult<double> r;
        if (c.method == "region") {
            r = hr::resolve_region_exact<double>(system, f, lambda, {c.cap, 1e-10});
        } else {
            hr::ProxOptions po;
            po.cap = c.cap;
            r = hr::resolve_prox(system, f, lambda, po);
        }
        for (hr::VertexIndex v = 0; v < system.size(); ++v)
            main.rows.push_back({system.vertex_id(v), num(f[v]), num(r.g[v]), num(r.residual[v])});
        meta["method"] = hr::to_string(r.method);
        meta["optimality_gap"] = num(r.optimality_gap);
        if (r.region) meta["region"] = region_string(system, *r.region);
    }
    Table info{{"key", "value"}, {}, {false, false}};
    for (auto it = meta.begin(); it != meta.end(); ++it) info.rows.push_back({it.key(), it.value().get<std::string>()});
    if (c.format == "json")
        Output(c).emit("resolve", main, {}, meta);
    else
        Output(c).emit("resolve", main, {{"info", info}});
}

void run_heat(const RunConfig& c) {
    const auto system = hr::load_system_file(c.input);
    if (c.f.empty()) throw hr::InvalidInput("heat needs --f");
    const double lambda = c.lambda.empty() ? 1e-3 : parse_positive(c.lambda, "lambda");
    const auto f = parse_function<double>(system, c.f);
    std::vector<double> times;
    for (const auto& t : split(c.times)) times.push_back(parse_positive(t, "t"));
    hr::ProxOptions po;
    po.cap = c.cap;
    const auto trajectory = hr::heat_trajectory(system, f, times, lambda, po);
    Table main;
    main.columns.push_back("t");
    for (const auto& id : system.vertex_ids()) main.columns.push_back(id);
    main.numeric.assign(main.columns.size(), true);
    for (const auto& s : trajectory) {
        std::vector<std::string> row{num(s.t)};
        for (double v : s.f) row.push_back(num(v));
        main.rows.push_back(std::move(row));
    }
    Output(c).emit("heat", main);
}

void run_verify(const RunConfig& c) {
    const auto system = hr::load_system_file(c.input);
    const auto options = curvature_options(c);
    const auto global = hr::global_curvature(system, options);
    const double kappa = global.kappa;
    const bool all = c.check == "all";
    Table main{{"check", "parameter", "value", "bound", "margin", "pass"}, {}, {false, true, true, true, true, false}};
    main.rows.push_back({"curvature", "", num(kappa), "", "", global.certified ? "true" : "false"});
    main.rows.push_back({"adjacency_reduction", "", num(kappa), "", "", global.reduction_holds ? "true" : "false"});
    if (all || c.check == "eigen") {
        std::vector<std::pair<double, hr::VertexFunction>> pairs;
        if (!c.f.empty() && !c.mu.empty()) {
            pairs.emplace_back(parse_positive(c.mu, "mu"), parse_function<double>(system, c.f));
        } else if (system.is_graph()) {
            for (auto& p : hr::graph_spectrum(system))
                if (p.mu > 1e-9) pairs.emplace_back(p.mu, std::move(p.f));
        }
        if (pairs.empty()) main.rows.push_back({"eigen", "", "", "", "", "not-applicable"});
        for (const auto& [mu, f] : pairs) {
            const auto r = hr::verify_eigen_bound(system, f, mu, kappa);
            main.rows.push_back({"eigen", num(mu), num(kappa), num(mu), num(mu - kappa), r.holds ? "true" : "false"});
        }
    }
    if (all || c.check == "gradient") {
        const double lambda = c.lambda.empty() ? 1e-3 : parse_positive(c.lambda, "lambda");
        const auto f = c.f.empty() ? distance_potential(system, 0) : parse_function<double>(system, c.f);
        std::vector<double> times;
        for (const auto& t : split(c.times)) times.push_back(parse_positive(t, "t"));
        for (const auto& row : hr::verify_gradient_estimate(system, f, times, lambda, kappa))
            main.rows.push_back({"gradient", num(row.t), num(row.lipschitz), num(row.bound + row.slack),
                                 num(row.bound + row.slack - row.lipschitz), row.holds ? "true" : "false"});
    }
    if (all || c.check == "diameter") {
        const auto r = hr::verify_diameter_bound(system, kappa);
        if (r.applicable)
            main.rows.push_back({"diameter", "", std::to_string(system.diameter()), num(r.bound), num(r.margin),
                                 r.holds ? "true" : "false"});
        else
            main.rows.push_back({"diameter", "", std::to_string(system.diameter()), "", "", "not-applicable"});
    }
    Output(c).emit("verify", main);
}

void run_gen(const RunConfig& c) {
    const auto system = hr::complete_hypergraph(c.n);
    Output out(c);
    out.stream() << hr::export_system_json(system);
}

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("hyper-ricci");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("HYPER_RICCI_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

int main(int argc, char** argv) {
    configure_logging();
    CLI::App app{"Coarse Ricci curvature of hypergraphs via the nonlinear resolvent"};
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&](CLI::App* sub, bool needs_input = true) {
        auto* in = sub->add_option("--input", c.input, "Hypergraph JSON file");
        if (needs_input) in->required()->check(CLI::ExistingFile);
        sub->add_option("--lambda-schedule", c.lambda_schedule, "Decreasing comma-separated lambdas");
        sub->add_option("--mode", c.mode, "Arithmetic")->check(CLI::IsMember({"float", "rational"}));
        sub->add_option("--pairs", c.pairs, "all | adjacent | x,y");
        sub->add_option("--out", c.out, "Output path (default stdout)");
        sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", c.seed, "Seed for every randomized path");
        sub->add_option("--threads", c.threads, "Worker threads (0 = hardware)");
        sub->add_option("--restarts", c.restarts, "Heuristic restarts above the cap")->check(CLI::PositiveNumber);
        sub->add_option("--fit-degree", c.fit_degree, "Largest rational fit degree");
        sub->add_option("--cap", c.cap, "Region enumeration cap on |V|")->check(CLI::Range(1, 20));
    };

    auto* curvature = app.add_subcommand("curvature", "Per-pair curvature reports");
    common(curvature);
    curvature->add_option("--candidates", c.candidates, "Candidates for the C(x, y) upper bound");
    curvature->add_option("--samples-out", c.samples_out, "Write per-lambda samples here");
    auto* kd = app.add_subcommand("kd", "Kantorovich difference matrix and metric checks");
    common(kd);
    kd->add_option("--lambda", c.lambda, "Resolvent parameter (p/q allowed in rational mode)");
    auto* resolve = app.add_subcommand("resolve", "J_lambda f");
    common(resolve);
    resolve->add_option("--lambda", c.lambda, "Resolvent parameter");
    resolve->add_option("--f", c.f, "Comma-separated function values");
    resolve->add_option("--method", c.method, "Float solver")->check(CLI::IsMember({"prox", "region"}));
    auto* heat = app.add_subcommand("heat", "Heat semigroup trajectory");
    common(heat);
    heat->add_option("--lambda", c.lambda, "Resolvent step (default 1e-3)");
    heat->add_option("--f", c.f, "Comma-separated initial function");
    heat->add_option("--t", c.times, "Comma-separated times");
    auto* verify = app.add_subcommand("verify", "Eigenvalue, gradient and diameter bounds");
    common(verify);
    verify->add_option("--check", c.check, "Which check")->check(CLI::IsMember({"all", "eigen", "gradient", "diameter"}));
    verify->add_option("--lambda", c.lambda, "Heat step for the gradient check (default 1e-3)");
    verify->add_option("--f", c.f, "Eigenfunction or initial function");
    verify->add_option("--mu", c.mu, "Eigenvalue paired with --f");
    verify->add_option("--t", c.times, "Times for the gradient check");
    auto* gen = app.add_subcommand("gen", "Write the complete hypergraph on n vertices");
    common(gen, false);
    gen->add_option("--n", c.n, "Number of vertices")->check(CLI::Range(2, 16));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (rational_mode(c) && c.format == "json") spdlog::debug("rational values are emitted as \"p/q\" strings");
        if (*curvature) run_curvature(c);
        if (*kd) run_kd(c);
        if (*resolve) run_resolve(c);
        if (*heat) run_heat(c);
        if (*verify) run_verify(c);
        if (*gen) run_gen(c);
    } catch (const hr::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const hr::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const hr::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
