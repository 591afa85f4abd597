#include "avlab/config.hpp"

#include "avlab/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace avlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "subcommand", "domain", "radius", "center", "half_axes", "vertices",
        "n", "p", "q", "lambda", "lambda_min", "lambda_max", "lambda_steps",
        "h", "m", "radial_nodes", "max_iter", "tol_rel", "restarts", "seed",
        "classical", "allow_critical", "out", "field", "kind", "output",
        "level", "timestamp"};
    return keys;
}

const std::set<std::string>& known_subcommands() {
    static const std::set<std::string> subs = {"constants", "energy",     "eigen",
                                               "solve",     "scan-lambda", "verify",
                                               "dump-field", "heatmap"};
    return subs;
}

double to_double(const std::string& v, const std::string& key, int line) {
    std::size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (...) {
        throw ParseError("config: value of '" + key + "' is not a number", line);
    }
    if (pos != v.size()) throw ParseError("config: trailing junk after '" + key + "'", line);
    return d;
}

long to_long(const std::string& v, const std::string& key, int line) {
    std::size_t pos = 0;
    long d;
    try {
        d = std::stol(v, &pos);
    } catch (...) {
        throw ParseError("config: value of '" + key + "' is not an integer", line);
    }
    if (pos != v.size()) throw ParseError("config: trailing junk after '" + key + "'", line);
    return d;
}

bool to_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError("config: value of '" + key + "' is not a boolean", line);
}

Vec to_vec(const std::string& v, const std::string& key, int line) {
    std::istringstream is(v);
    std::vector<double> vals;
    double d;
    while (is >> d) vals.push_back(d);
    if (!is.eof()) throw ParseError("config: bad vector value for '" + key + "'", line);
    if (vals.empty()) throw ParseError("config: empty vector for '" + key + "'", line);
    return Eigen::Map<const Vec>(vals.data(), static_cast<Index>(vals.size()));
}

std::vector<Eigen::Vector2d> to_vertices(const std::string& v, int line) {
    std::vector<Eigen::Vector2d> out;
    std::istringstream groups(v);
    std::string part;
    while (std::getline(groups, part, ';')) {
        std::istringstream is(part);
        double x, y;
        if (!(is >> x >> y)) throw ParseError("config: vertex needs two coordinates", line);
        out.emplace_back(x, y);
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::set<std::string> seen;
    bool center_set = false, axes_set = false;

    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config: expected 'key = value'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!known_keys().count(key)) throw ParseError("config: unknown key '" + key + "'", lineno);
        if (!seen.insert(key).second)
            throw ParseError("config: duplicate key '" + key + "'", lineno);
        if (val.empty()) throw ParseError("config: empty value for '" + key + "'", lineno);

        if (key == "subcommand") cfg.subcommand = val;
        else if (key == "domain") cfg.domain = val;
        else if (key == "radius") cfg.radius = to_double(val, key, lineno);
        else if (key == "center") { cfg.center = to_vec(val, key, lineno); center_set = true; }
        else if (key == "half_axes") { cfg.half_axes = to_vec(val, key, lineno); axes_set = true; }
        else if (key == "vertices") cfg.vertices = to_vertices(val, lineno);
        else if (key == "n") cfg.n = static_cast<int>(to_long(val, key, lineno));
        else if (key == "p") cfg.p = to_double(val, key, lineno);
        else if (key == "q") cfg.q = to_double(val, key, lineno);
        else if (key == "lambda") cfg.lambda = to_double(val, key, lineno);
        else if (key == "lambda_min") cfg.lambda_min = to_double(val, key, lineno);
        else if (key == "lambda_max") cfg.lambda_max = to_double(val, key, lineno);
        else if (key == "lambda_steps") cfg.lambda_steps = static_cast<int>(to_long(val, key, lineno));
        else if (key == "h") cfg.h = to_double(val, key, lineno);
        else if (key == "m") cfg.m = static_cast<int>(to_long(val, key, lineno));
        else if (key == "radial_nodes") cfg.radial_nodes = static_cast<int>(to_long(val, key, lineno));
        else if (key == "max_iter") cfg.max_iter = static_cast<int>(to_long(val, key, lineno));
        else if (key == "tol_rel") cfg.tol_rel = to_double(val, key, lineno);
        else if (key == "restarts") cfg.restarts = static_cast<int>(to_long(val, key, lineno));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(val, key, lineno));
        else if (key == "classical") cfg.classical = to_bool(val, key, lineno);
        else if (key == "allow_critical") cfg.allow_critical = to_bool(val, key, lineno);
        else if (key == "out") cfg.out = val;
        else if (key == "field") cfg.field = val;
        else if (key == "kind") cfg.kind = val;
        else if (key == "output") cfg.output = val;
        else if (key == "level") cfg.level = val;
        else if (key == "timestamp") cfg.timestamp = to_bool(val, key, lineno);
    }

    if (!center_set) cfg.center = Vec::Zero(cfg.n);
    if (!axes_set) cfg.half_axes = Vec::Constant(cfg.n, 1.0);
    return cfg;
}

DomainSpec DomainSpec_from(const RunConfig& cfg) {
    Vec center = cfg.center.size() == cfg.n ? cfg.center : Vec::Zero(cfg.n);
    if (cfg.domain == "disk" || cfg.domain == "ball")
        return DomainSpec::ball(center, cfg.radius);
    if (cfg.domain == "square")
        return DomainSpec::rectangle(center, Vec::Constant(cfg.n, cfg.radius));
    if (cfg.domain == "rectangle") {
        Vec ax = cfg.half_axes.size() == cfg.n ? cfg.half_axes : Vec::Constant(cfg.n, 1.0);
        return DomainSpec::rectangle(center, ax);
    }
    if (cfg.domain == "ellipse" || cfg.domain == "ellipsoid") {
        Vec ax = cfg.half_axes.size() == cfg.n ? cfg.half_axes : Vec::Constant(cfg.n, 1.0);
        return DomainSpec::ellipse(center, ax);
    }
    if (cfg.domain == "polygon") return DomainSpec::polygon(cfg.vertices);
    throw ValidationError("config: unknown domain kind '" + cfg.domain + "'");
}

DomainSpec RunConfig::domain_spec() const { return DomainSpec_from(*this); }

void validate_config(const RunConfig& cfg) {
    if (!known_subcommands().count(cfg.subcommand))
        throw ValidationError("config: unknown subcommand '" + cfg.subcommand + "'");
    if (cfg.n != 2 && cfg.n != 3) throw ValidationError("config: n must be 2 or 3");
    if (!(cfg.h > 0.0)) throw ValidationError("config: h must be positive");
    if (cfg.tol_rel <= 0.0) throw ValidationError("config: tol_rel must be positive");
    if (cfg.max_iter < 1) throw ValidationError("config: max_iter must be >= 1");
    if (cfg.restarts < 0) throw ValidationError("config: restarts must be >= 0");
    if (cfg.m != 0 && cfg.m < 4) throw ValidationError("config: m must be >= 4");
    if (cfg.level != "fast" && cfg.level != "full")
        throw ValidationError("config: level must be fast or full");

    const bool needs_p = cfg.subcommand != "dump-field" && cfg.subcommand != "heatmap" &&
                         cfg.subcommand != "verify";
    if (needs_p && !(cfg.p >= 1.0)) throw ValidationError("config: p must be >= 1");

    if (cfg.subcommand == "eigen" && !(cfg.p > 1.0))
        throw ValidationError("config: eigen requires p > 1");

    if (cfg.subcommand == "solve" || cfg.subcommand == "scan-lambda") {
        if (!(cfg.p > 1.0 && cfg.p < cfg.n))
            throw ValidationError("config: requires 1 < p < n");
        const double pstar = cfg.n * cfg.p / (cfg.n - cfg.p);
        if (cfg.subcommand == "solve" && cfg.q > 0.0) {
            if (!(cfg.q > cfg.p)) throw ValidationError("config: requires q > p");
            if (cfg.q > pstar + 1e-12) {
                std::ostringstream msg;
                msg << "config: q exceeds p* = np/(n-p) = " << pstar;
                throw ValidationError(msg.str());
            }
        }
        if (cfg.subcommand == "scan-lambda" && cfg.lambda_steps < 2)
            throw ValidationError("config: lambda_steps must be >= 2");
    }
    if (cfg.subcommand == "heatmap" && cfg.field.empty())
        throw ValidationError("config: heatmap needs an input field file");
    if (cfg.subcommand == "dump-field" && cfg.kind != "bump" && cfg.kind != "noise")
        throw ValidationError("config: dump-field kind must be bump or noise");
}

std::string RunConfig::resolved() const {
    std::ostringstream os;
    os << "subcommand = " << subcommand << '\n';
    os << "domain = " << domain << '\n';
    os << "radius = " << format_g17(radius) << '\n';
    os << "center =";
    for (Index i = 0; i < center.size(); ++i) os << ' ' << format_g17(center[i]);
    os << '\n';
    os << "half_axes =";
    for (Index i = 0; i < half_axes.size(); ++i) os << ' ' << format_g17(half_axes[i]);
    os << '\n';
    if (!vertices.empty()) {
        os << "vertices = ";
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (i) os << "; ";
            os << format_g17(vertices[i].x()) << ' ' << format_g17(vertices[i].y());
        }
        os << '\n';
    }
    os << "n = " << n << '\n';
    os << "p = " << format_g17(p) << '\n';
    os << "q = " << format_g17(q) << '\n';
    os << "lambda = " << format_g17(lambda) << '\n';
    os << "lambda_min = " << format_g17(lambda_min) << '\n';
    os << "lambda_max = " << format_g17(lambda_max) << '\n';
    os << "lambda_steps = " << lambda_steps << '\n';
    os << "h = " << format_g17(h) << '\n';
    os << "m = " << m << '\n';
    os << "radial_nodes = " << radial_nodes << '\n';
    os << "max_iter = " << max_iter << '\n';
    os << "tol_rel = " << format_g17(tol_rel) << '\n';
    os << "restarts = " << restarts << '\n';
    os << "seed = " << seed << '\n';
    os << "classical = " << (classical ? "true" : "false") << '\n';
    os << "allow_critical = " << (allow_critical ? "true" : "false") << '\n';
    os << "out = " << out << '\n';
    if (!field.empty()) os << "field = " << field << '\n';
    os << "kind = " << kind << '\n';
    os << "output = " << output << '\n';
    os << "level = " << level << '\n';
    os << "timestamp = " << (timestamp ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace avlab
