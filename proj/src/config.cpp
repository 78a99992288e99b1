#include "uqo/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace uqo {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("invalid value for '" + key + "': '" + text + "'");
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = lower(trim(text));
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError("invalid boolean for '" + key + "': '" + text + "'");
}

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

const char* algorithm_name(Algorithm algorithm, Problem problem) {
    switch (algorithm) {
        case Algorithm::Woa: return "WOA";
        case Algorithm::Ftp: return "FTP";
        case Algorithm::RsrPip: return problem == Problem::SkiRental ? "RSR-PIP" : "PFA-PIP";
        case Algorithm::OlDynamic: return "OL-Dynamic";
        case Algorithm::OlStatic: return "OL-Static";
        case Algorithm::DsrPip: return "DSR-PIP";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
    const std::string n = lower(trim(name));
    if (n == "woa") return Algorithm::Woa;
    if (n == "ftp") return Algorithm::Ftp;
    if (n == "rsr-pip" || n == "pfa-pip") return Algorithm::RsrPip;
    if (n == "ol-dynamic") return Algorithm::OlDynamic;
    if (n == "ol-static") return Algorithm::OlStatic;
    if (n == "dsr-pip") return Algorithm::DsrPip;
    throw ConfigError("unknown algorithm '" + name + "'");
}

double ExperimentConfig::sigma_at(std::int64_t round_index) const {
    std::int64_t period = 0;
    for (const auto& phase : sigma_pattern) period += phase.length;
    std::int64_t r = round_index % period;
    for (const auto& phase : sigma_pattern) {
        if (r < phase.length) return phase.sigma;
        r -= phase.length;
    }
    return sigma_pattern.back().sigma;
}

void ExperimentConfig::validate() const {
    if (T < 1) throw ConfigError("T must be at least 1");
    if (runs < 1) throw ConfigError("runs must be at least 1");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    if (sigma_pattern.empty()) throw ConfigError("sigma_pattern must not be empty");
    for (const auto& phase : sigma_pattern) {
        if (phase.length < 1) throw ConfigError("sigma_pattern lengths must be positive");
        if (!(phase.sigma >= 0.0)) throw ConfigError("sigma_pattern sigmas must be nonnegative");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) throw ConfigError("confidence must lie in (0, 1)");
    if (delta >= 0.0 && delta > 1.0) throw ConfigError("delta must lie in [0, 1]");
    if (algorithms.empty()) throw ConfigError("algorithms must not be empty");
    for (std::size_t i = 0; i < algorithms.size(); ++i)
        for (std::size_t j = i + 1; j < algorithms.size(); ++j)
            if (algorithms[i] == algorithms[j]) throw ConfigError("algorithms lists a duplicate");
    if (!(eg_step_scale > 0.0)) throw ConfigError("eg_step_scale must be positive");
    if (problem == Problem::SkiRental) {
        if (B < 1) throw ConfigError("B must be at least 1");
        if (horizon_max < 1) throw ConfigError("horizon_max must be at least 1");
        if (!(1 <= day_min && day_min <= day_max && day_max <= horizon_max))
            throw ConfigError("day_support must lie within [1, horizon_max]");
    } else {
        if (!(m > 0.0 && M > m)) throw ConfigError("need 0 < m < M");
        if (!(grid_eps > 0.0)) throw ConfigError("grid_eps must be positive");
        if (search_steps < 2) throw ConfigError("search_steps must be at least 2");
        if (std::find(algorithms.begin(), algorithms.end(), Algorithm::DsrPip) != algorithms.end())
            throw ConfigError("DSR-PIP applies to ski rental only");
    }
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "problem", "T", "runs", "seed", "threads", "B", "horizon_max", "day_support", "ftp_literal",
        "sigma_pattern", "confidence", "delta", "algorithms", "m", "M", "grid_eps", "search_steps",
        "eg_step_scale", "memoize"};
    return keys;
}

void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "problem") {
        const std::string p = lower(v);
        if (p == "ski-rental") c.problem = Problem::SkiRental;
        else if (p == "online-search") c.problem = Problem::OnlineSearch;
        else throw ConfigError("problem must be ski-rental or online-search");
    } else if (key == "T") {
        c.T = parse_number<std::int64_t>(key, v);
    } else if (key == "runs") {
        c.runs = parse_number<std::int64_t>(key, v);
    } else if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(key, v);
    } else if (key == "threads") {
        c.threads = parse_number<std::int64_t>(key, v);
    } else if (key == "B") {
        c.B = parse_number<std::int64_t>(key, v);
    } else if (key == "horizon_max") {
        c.horizon_max = parse_number<std::int64_t>(key, v);
    } else if (key == "day_support") {
        const auto pos = v.find("..");
        if (pos == std::string::npos) throw ConfigError("day_support must look like 1..8");
        c.day_min = parse_number<std::int64_t>(key, v.substr(0, pos));
        c.day_max = parse_number<std::int64_t>(key, v.substr(pos + 2));
    } else if (key == "ftp_literal") {
        c.ftp_literal = parse_bool(key, v);
    } else if (key == "sigma_pattern") {
        std::vector<SigmaPhase> phases;
        for (const auto& item : split(v, ',')) {
            const auto pos = item.find(':');
            if (pos == std::string::npos) throw ConfigError("sigma_pattern entries must look like length:sigma");
            phases.push_back({parse_number<std::int64_t>(key, item.substr(0, pos)),
                              parse_number<double>(key, item.substr(pos + 1))});
        }
        c.sigma_pattern = std::move(phases);
    } else if (key == "confidence") {
        c.confidence = parse_number<double>(key, v);
    } else if (key == "delta") {
        c.delta = parse_number<double>(key, v);
        if (!(c.delta >= 0.0 && c.delta <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
    } else if (key == "algorithms") {
        std::vector<Algorithm> algs;
        for (const auto& item : split(v, ','))
            if (!item.empty()) algs.push_back(parse_algorithm(item));
        c.algorithms = std::move(algs);
    } else if (key == "m") {
        c.m = parse_number<double>(key, v);
    } else if (key == "M") {
        c.M = parse_number<double>(key, v);
    } else if (key == "grid_eps") {
        c.grid_eps = parse_number<double>(key, v);
    } else if (key == "search_steps") {
        c.search_steps = parse_number<std::int64_t>(key, v);
    } else if (key == "eg_step_scale") {
        c.eg_step_scale = parse_number<double>(key, v);
    } else if (key == "memoize") {
        c.memoize = parse_bool(key, v);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(number) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    if (in.bad()) throw IoError("error while reading config file: " + path);
    return out;
}

ExperimentConfig load_config(const std::string& path) {
    ExperimentConfig c;
    for (const auto& [key, value] : read_config_file(path)) set_config_value(c, key, value);
    c.validate();
    return c;
}

std::string describe(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "problem = " << (c.problem == Problem::SkiRental ? "ski-rental" : "online-search") << "\n";
    os << "T = " << c.T << "\nruns = " << c.runs << "\nseed = " << c.seed << "\nthreads = " << c.threads << "\n";
    os << "B = " << c.B << "\nhorizon_max = " << c.horizon_max << "\nday_support = " << c.day_min << ".."
       << c.day_max << "\nftp_literal = " << (c.ftp_literal ? "true" : "false") << "\n";
    os << "sigma_pattern = ";
    for (std::size_t i = 0; i < c.sigma_pattern.size(); ++i)
        os << (i ? "," : "") << c.sigma_pattern[i].length << ":" << fmt(c.sigma_pattern[i].sigma);
    os << "\nconfidence = " << fmt(c.confidence) << "\n";
    if (c.delta >= 0.0) os << "delta = " << fmt(c.delta) << "\n";
    os << "algorithms = ";
    for (std::size_t i = 0; i < c.algorithms.size(); ++i)
        os << (i ? "," : "") << algorithm_name(c.algorithms[i], c.problem);
    os << "\nm = " << fmt(c.m) << "\nM = " << fmt(c.M) << "\ngrid_eps = " << fmt(c.grid_eps)
       << "\nsearch_steps = " << c.search_steps << "\neg_step_scale = " << fmt(c.eg_step_scale)
       << "\nmemoize = " << (c.memoize ? "true" : "false") << "\n";
    return os.str();
}

}  // namespace uqo
