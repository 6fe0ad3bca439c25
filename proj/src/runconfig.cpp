#include "stokeshs/runconfig.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

extern char** environ;

namespace stokeshs::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + v);
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + key + "': " + v);
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    const std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError("config: bad boolean value for '" + key + "': " + v);
}

}  // namespace

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(to_double("list", item));
    }
    return out;
}

RunConfig::RunConfig() {
    quad.abs_tol = 1e-8;
    quad.rel_tol = 1e-6;
    field_quad.abs_tol = 1e-6;
    field_quad.rel_tol = 1e-4;
}

namespace {

void assign(RunConfig& rc, const std::string& section, const std::string& key,
            const std::string& value) {
    const std::string k = section + "." + key;
    if (section == "run") {
        if (key == "dim") {
            rc.dim = static_cast<int>(to_long(k, value));
        } else if (key == "alpha") {
            rc.alpha = to_double(k, value);
        } else if (key == "eps") {
            rc.eps = to_double(k, value);
        } else if (key == "output_dir") {
            rc.output_dir = value;
        } else if (key == "seed") {
            rc.seed = to_long(k, value);
        } else if (key == "deterministic") {
            rc.deterministic = to_bool(k, value);
        } else {
            throw ConfigError("config: unknown key '" + k + "'");
        }
        return;
    }
    if (section == "quad" || section == "field") {
        quad::Config& q = (section == "quad") ? rc.quad : rc.field_quad;
        if (key == "abs_tol") {
            q.abs_tol = to_double(k, value);
        } else if (key == "rel_tol") {
            q.rel_tol = to_double(k, value);
        } else if (key == "max_subdivisions") {
            q.max_subdivisions = static_cast<int>(to_long(k, value));
        } else if (key == "trunc_radius_space") {
            q.trunc_radius = to_double(k, value);
        } else if (key == "trunc_policy") {
            const std::string v = lower(value);
            if (v == "fixed") {
                q.trunc_policy = quad::Config::Trunc::fixed;
            } else if (v == "auto_gaussian_tail") {
                q.trunc_policy = quad::Config::Trunc::auto_gaussian_tail;
            } else {
                throw ConfigError("config: bad trunc_policy '" + value + "'");
            }
        } else if (key == "pv_pairing") {
            q.pv_pairing = to_bool(k, value);
        } else if (key == "endpoint_split") {
            q.endpoint_split = to_double(k, value);
        } else {
            throw ConfigError("config: unknown key '" + k + "'");
        }
        return;
    }
    if (section == "scan") {
        if (key == "r") {
            rc.scan.r = to_double(k, value);
        } else if (key == "deltas") {
            rc.scan.deltas = parse_double_list(value);
        } else if (key == "component") {
            rc.scan.component = static_cast<int>(to_long(k, value));
        } else if (key == "full_gradient") {
            rc.scan.full_gradient = to_bool(k, value);
        } else {
            throw ConfigError("config: unknown key '" + k + "'");
        }
        return;
    }
    throw ConfigError("config: unknown section '" + section + "'");
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    RunConfig rc;
    std::string line, section = "run";
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: bad section header at line " +
                                  std::to_string(lineno));
            section = lower(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " +
                              std::to_string(lineno));
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        assign(rc, section, key, value);
    }
    rc.validate();
    return rc;
}

void RunConfig::apply_env() {
    const std::string prefix = "STOKESHS_";
    for (char** e = environ; *e != nullptr; ++e) {
        const std::string entry(*e);
        if (entry.rfind(prefix, 0) != 0) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos) continue;
        std::string name = entry.substr(prefix.size(), eq - prefix.size());
        const std::string value = entry.substr(eq + 1);
        const auto us = name.find('_');
        if (us == std::string::npos)
            throw ConfigError("env: expected STOKESHS_SECTION_KEY, got " + entry);
        const std::string section = lower(name.substr(0, us));
        const std::string key = lower(name.substr(us + 1));
        assign(*this, section, key, value);
    }
    validate();
}

void RunConfig::validate() const {
    if (dim != 2 && dim != 3) throw ConfigError("config: dim must be 2 or 3");
    if (!(alpha > 0.0)) throw ConfigError("config: alpha must be > 0");
    if (!(eps > 0.0 && eps <= 0.25)) throw ConfigError("config: eps must be in (0, 1/4]");
    auto check_quad = [](const quad::Config& q, const std::string& who) {
        if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0))
            throw ConfigError("config: " + who + " tolerances must be > 0");
        if (q.max_subdivisions < 8)
            throw ConfigError("config: " + who + " max_subdivisions must be >= 8");
        if (!(q.trunc_radius > 0.0))
            throw ConfigError("config: " + who + " trunc_radius_space must be > 0");
    };
    check_quad(quad, "quad");
    check_quad(field_quad, "field");
    if (!(scan.r > 0.0 && scan.r <= 0.5))
        throw ConfigError("config: scan.r must lie in (0, 1/2]");
    for (std::size_t i = 0; i < scan.deltas.size(); ++i) {
        if (!(scan.deltas[i] > 0.0 && scan.deltas[i] < scan.r * scan.r))
            throw ConfigError("config: scan deltas must lie in (0, r^2)");
        if (i > 0 && !(scan.deltas[i] < scan.deltas[i - 1]))
            throw ConfigError("config: scan deltas must be decreasing");
    }
    if (scan.component < 1 || scan.component > dim)
        throw ConfigError("config: scan.component out of range");
}

std::vector<std::string> RunConfig::describe() const {
    std::vector<std::string> out;
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    out.push_back("run.dim=" + std::to_string(dim));
    out.push_back("run.alpha=" + num(alpha));
    out.push_back("run.eps=" + num(eps));
    out.push_back("run.seed=" + std::to_string(seed));
    out.push_back(std::string("run.deterministic=") + (deterministic ? "true" : "false"));
    out.push_back("run.output_dir=" + output_dir);
    auto qd = [&](const quad::Config& q, const std::string& s) {
        out.push_back(s + ".abs_tol=" + num(q.abs_tol));
        out.push_back(s + ".rel_tol=" + num(q.rel_tol));
        out.push_back(s + ".max_subdivisions=" + std::to_string(q.max_subdivisions));
        out.push_back(s + ".trunc_radius_space=" + num(q.trunc_radius));
        out.push_back(s + ".trunc_policy=" +
                      std::string(q.trunc_policy == quad::Config::Trunc::fixed
                                      ? "fixed"
                                      : "auto_gaussian_tail"));
        out.push_back(s + ".pv_pairing=" + std::string(q.pv_pairing ? "true" : "false"));
        out.push_back(s + ".endpoint_split=" + num(q.endpoint_split));
    };
    qd(quad, "quad");
    qd(field_quad, "field");
    out.push_back("scan.r=" + num(scan.r));
    std::string ds;
    for (std::size_t i = 0; i < scan.deltas.size(); ++i)
        ds += (i ? "," : "") + num(scan.deltas[i]);
    out.push_back("scan.deltas=" + ds);
    out.push_back("scan.component=" + std::to_string(scan.component));
    out.push_back(std::string("scan.full_gradient=") +
                  (scan.full_gradient ? "true" : "false"));
    return out;
}

}  // namespace stokeshs::cli
