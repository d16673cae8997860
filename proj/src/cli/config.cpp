#include "lmcts/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "lmcts/core/error.hpp"
#include "lmcts/harness/results.hpp"

namespace lmcts {

namespace {

struct Field {
    std::string section;
    std::string key;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& seps)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (seps.find(c) != std::string::npos) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

template <class T>
T parse_number(const std::string& v)
{
    T out{};
    const std::string s = trim(v);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("'" + v + "' is not a valid number");
    }
    return out;
}

bool parse_bool(const std::string& v)
{
    const std::string s = trim(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    throw std::invalid_argument("'" + v + "' is not a boolean");
}

char parse_delimiter(const std::string& v)
{
    const std::string s = trim(v);
    if (s == "comma") {
        return ',';
    }
    if (s == "tab") {
        return '\t';
    }
    if (s == "space") {
        return ' ';
    }
    if (s == "semicolon") {
        return ';';
    }
    throw std::invalid_argument("delimiter must be comma, tab, space or semicolon");
}

std::string delimiter_name(char c)
{
    switch (c) {
    case '\t':
        return "tab";
    case ' ':
        return "space";
    case ';':
        return "semicolon";
    default:
        return "comma";
    }
}

template <class T>
std::string list_text(const std::vector<T>& v)
{
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s << (i ? "," : "") << v[i];
    }
    return s.str();
}

// Member-pointer based field builders.
template <class Sub, class T>
Field num(std::string section, std::string key, Sub ExperimentConfig::*sub, T Sub::*member)
{
    return {section, key, [=](ExperimentConfig& c, const std::string& v) { c.*sub.*member = parse_number<T>(v); },
            [=](const ExperimentConfig& c) {
                if constexpr (std::is_floating_point_v<T>) {
                    return format_number(c.*sub.*member);
                } else {
                    return std::to_string(c.*sub.*member);
                }
            }};
}

template <class Sub>
Field flag(std::string section, std::string key, Sub ExperimentConfig::*sub, bool Sub::*member)
{
    return {section, key, [=](ExperimentConfig& c, const std::string& v) { c.*sub.*member = parse_bool(v); },
            [=](const ExperimentConfig& c) { return std::string(c.*sub.*member ? "true" : "false"); }};
}

template <class Sub>
Field text(std::string section, std::string key, Sub ExperimentConfig::*sub, std::string Sub::*member)
{
    return {section, key, [=](ExperimentConfig& c, const std::string& v) { c.*sub.*member = trim(v); },
            [=](const ExperimentConfig& c) { return c.*sub.*member; }};
}

const std::vector<Field>& fields()
{
    using C = ExperimentConfig;
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        // [env]
        f.push_back(text("env", "kind", &C::env, &EnvConfig::kind));
        f.push_back(num("env", "d", &C::env, &EnvConfig::dim));
        f.push_back(num("env", "arms", &C::env, &EnvConfig::arms));
        f.push_back(flag("env", "changing", &C::env, &EnvConfig::changing));
        f.push_back(num("env", "noise", &C::env, &EnvConfig::noise_variance));
        f.push_back(text("env", "path", &C::env, &EnvConfig::path));
        f.push_back(text("env", "spec", &C::env, &EnvConfig::spec));
        f.push_back({"env", "delimiter",
                     [](C& c, const std::string& v) { c.env.delimiter = parse_delimiter(v); },
                     [](const C& c) { return delimiter_name(c.env.delimiter); }});
        f.push_back(flag("env", "header", &C::env, &EnvConfig::header));
        f.push_back(num("env", "label_base", &C::env, &EnvConfig::label_base));
        f.push_back(flag("env", "normalize", &C::env, &EnvConfig::normalize));
        f.push_back(num("env", "classes", &C::env, &EnvConfig::classes));
        f.push_back(flag("env", "wrap", &C::env, &EnvConfig::wrap));
        // [agent]
        f.push_back(text("agent", "variant", &C::agent, &AgentConfig::variant));
        f.push_back(text("agent", "model", &C::agent, &AgentConfig::model));
        f.push_back(num("agent", "lambda", &C::agent, &AgentConfig::lambda));
        f.push_back(text("agent", "schedule", &C::agent, &AgentConfig::schedule));
        f.push_back(num("agent", "eta0", &C::agent, &AgentConfig::eta0));
        f.push_back(num("agent", "beta_inv", &C::agent, &AgentConfig::beta_inv));
        f.push_back(num("agent", "K", &C::agent, &AgentConfig::epoch_length));
        f.push_back(num("agent", "batch", &C::agent, &AgentConfig::batch_size));
        f.push_back(num("agent", "theory_r", &C::agent, &AgentConfig::theory_r));
        f.push_back(num("agent", "theory_delta", &C::agent, &AgentConfig::theory_delta));
        f.push_back(num("agent", "c", &C::agent, &AgentConfig::c));
        f.push_back(num("agent", "a", &C::agent, &AgentConfig::a));
        f.push_back(num("agent", "mle_iters", &C::agent, &AgentConfig::mle_iters));
        f.push_back(num("agent", "mle_tol", &C::agent, &AgentConfig::mle_tol));
        f.push_back({"agent", "hidden",
                     [](C& c, const std::string& v) {
                         c.agent.hidden.clear();
                         for (const auto& w : split(v, ",x")) {
                             c.agent.hidden.push_back(parse_number<std::size_t>(w));
                         }
                     },
                     [](const C& c) { return list_text(c.agent.hidden); }});
        f.push_back(num("agent", "alpha", &C::agent, &AgentConfig::leaky_alpha));
        f.push_back(num("agent", "steps", &C::agent, &AgentConfig::train_steps));
        f.push_back(num("agent", "lr", &C::agent, &AgentConfig::learning_rate));
        // [run]
        f.push_back(num("run", "T", &C::run, &RunConfig::horizon));
        f.push_back({"run", "seeds",
                     [](C& c, const std::string& v) {
                         c.run.seeds.clear();
                         for (const auto& s : split(v, ",")) {
                             c.run.seeds.push_back(parse_number<std::uint64_t>(s));
                         }
                     },
                     [](const C& c) { return list_text(c.run.seeds); }});
        f.push_back(text("run", "tag", &C::run, &RunConfig::tag));
        f.push_back(text("run", "out", &C::run, &RunConfig::out));
        f.push_back(num("run", "jobs", &C::run, &RunConfig::jobs));
        // [diagnose]
        f.push_back(num("diagnose", "d", &C::diagnose, &DiagnoseConfig::dim));
        f.push_back(num("diagnose", "rounds", &C::diagnose, &DiagnoseConfig::rounds));
        f.push_back(num("diagnose", "chains", &C::diagnose, &DiagnoseConfig::chains));
        f.push_back(num("diagnose", "K", &C::diagnose, &DiagnoseConfig::epoch_length));
        f.push_back(num("diagnose", "beta", &C::diagnose, &DiagnoseConfig::beta));
        f.push_back(num("diagnose", "eta_scale", &C::diagnose, &DiagnoseConfig::eta_scale));
        f.push_back(num("diagnose", "threshold", &C::diagnose, &DiagnoseConfig::threshold));
        f.push_back(flag("diagnose", "mismatch", &C::diagnose, &DiagnoseConfig::mismatch));
        f.push_back(num("diagnose", "seed", &C::diagnose, &DiagnoseConfig::seed));
        return f;
    }();
    return table;
}

const Field* find_field(const std::string& section, const std::string& key)
{
    for (const auto& f : fields()) {
        if (f.section == section && f.key == key) {
            return &f;
        }
    }
    return nullptr;
}

void check_run(const RunConfig& r)
{
    if (r.horizon == 0) {
        throw ConfigError("run.T: must be at least 1");
    }
    if (r.seeds.empty()) {
        throw ConfigError("run.seeds: need at least one seed");
    }
    if (std::set<std::uint64_t>(r.seeds.begin(), r.seeds.end()).size() != r.seeds.size()) {
        throw ConfigError("run.seeds: seeds must be distinct");
    }
    if (r.tag.empty() || r.tag.find_first_of("/\\") != std::string::npos) {
        throw ConfigError("run.tag: must be a non-empty file-name prefix");
    }
    if (r.jobs == 0) {
        throw ConfigError("run.jobs: must be at least 1");
    }
}

} // namespace

void set_field(ExperimentConfig& cfg, const std::string& section, const std::string& key, const std::string& value)
{
    const Field* f = find_field(section, key);
    if (!f) {
        throw ConfigError(section + "." + key + ": unknown key");
    }
    try {
        f->set(cfg, value);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(section + "." + key + ": " + e.what());
    }
}

void set_field(ExperimentConfig& cfg, const std::string& dotted_key, const std::string& value)
{
    const auto dot = dotted_key.find('.');
    if (dot == std::string::npos) {
        throw ConfigError(dotted_key + ": expected section.key");
    }
    set_field(cfg, dotted_key.substr(0, dot), dotted_key.substr(dot + 1), value);
}

ExperimentConfig parse_config(const std::string& text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
    }

    ExperimentConfig cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw ConfigError(section + ": key outside of a section");
        }
        if (section == "grid") {
            for (const auto& [key, val] : body) {
                const auto dot = key.find('.');
                if (dot == std::string::npos || !find_field(key.substr(0, dot), key.substr(dot + 1))) {
                    throw ConfigError("grid." + key + ": unknown parameter");
                }
                GridAxis axis{key, {}};
                for (const auto& v : split(val.data(), ",")) {
                    if (!v.empty()) {
                        axis.values.push_back(v);
                    }
                }
                if (axis.values.empty()) {
                    throw ConfigError("grid." + key + ": empty value list");
                }
                cfg.grid.push_back(std::move(axis));
            }
            continue;
        }
        if (section != "env" && section != "agent" && section != "run" && section != "diagnose") {
            throw ConfigError(section + ": unknown section");
        }
        for (const auto& [key, val] : body) {
            set_field(cfg, section, key, val.data());
        }
    }
    check_run(cfg.run);
    cfg.agent.validate();
    cfg.env.validate();
    // every grid value must parse for its field
    for (const auto& axis : cfg.grid) {
        ExperimentConfig probe = cfg;
        for (const auto& v : axis.values) {
            set_field(probe, axis.key, v);
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config " + path.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return parse_config(s.str());
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) {
        out.emplace_back(f.section + "." + f.key, f.get(cfg));
    }
    for (const auto& axis : cfg.grid) {
        out.emplace_back("grid." + axis.key, list_text(axis.values));
    }
    return out;
}

std::string to_ini(const ExperimentConfig& cfg)
{
    std::ostringstream s;
    std::string current;
    for (const auto& [k, v] : config_entries(cfg)) {
        const auto dot = k.find('.');
        const std::string section = k.substr(0, dot);
        if (section != current) {
            s << (current.empty() ? "" : "\n") << '[' << section << "]\n";
            current = section;
        }
        s << k.substr(dot + 1) << " = " << v << '\n';
    }
    return s.str();
}

} // namespace lmcts
