#include "uqo/chart.hpp"

#include "uqo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace uqo {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(line);
    while (std::getline(is, item, ',')) out.push_back(item);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <class T>
T field(const std::string& text, const char* name, std::size_t row) {
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("row " + std::to_string(row) + ": bad " + name + " '" + text + "'");
    return v;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::vector<ChartSeries> load_chart_series(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot read csv: " + csv_path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("row 1: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv(line);
    auto column = [&](const char* name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ConfigError(std::string("row 1: header lacks column '") + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    for (const auto* name : {"run", "ell", "u", "delta", "true_value", "ratio"}) column(name);
    const std::size_t c_t = column("t"), c_alg = column("algorithm"), c_ex = column("cumulative_excess");

    // algorithm -> t -> (sum, count), kept in first-seen order.
    std::vector<std::string> order;
    std::map<std::string, std::map<std::int64_t, std::pair<double, int>>> acc;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != header.size())
            throw ConfigError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                              " fields, found " + std::to_string(f.size()));
        const auto& alg = f[c_alg];
        if (alg.empty()) throw ConfigError("row " + std::to_string(row) + ": empty algorithm");
        const auto t = field<std::int64_t>(f[c_t], "t", row);
        const auto ex = field<double>(f[c_ex], "cumulative_excess", row);
        if (!acc.count(alg)) order.push_back(alg);
        auto& cell = acc[alg][t];
        cell.first += ex;
        ++cell.second;
    }
    if (order.empty()) throw ConfigError("csv contains no records: " + csv_path);

    std::vector<ChartSeries> out;
    for (const auto& alg : order) {
        ChartSeries s;
        s.algorithm = alg;
        for (const auto& [t, sc] : acc[alg]) {
            s.t.push_back(t);
            s.mean_excess.push_back(sc.first / sc.second);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string render_chart_svg(const std::vector<ChartSeries>& series) {
    if (series.empty()) throw ConfigError("no series to plot");
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
    const double width = 800, height = 500, left = 70, right = 180, top = 40, bottom = 60;
    const double pw = width - left - right, ph = height - top - bottom;

    double t_max = 1, y_min = 0, y_max = 0;
    for (const auto& s : series) {
        if (!s.t.empty()) t_max = std::max(t_max, static_cast<double>(s.t.back()));
        for (double v : s.mean_excess) y_min = std::min(y_min, v), y_max = std::max(y_max, v);
    }
    if (y_max - y_min < 1e-9) y_max = y_min + 0.1;
    y_max += 0.05 * (y_max - y_min);
    auto px = [&](double t) { return left + pw * (t - 1.0) / std::max(t_max - 1.0, 1.0); };
    auto py = [&](double v) { return top + ph * (y_max - v) / (y_max - y_min); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << "Cumulative empirical ratio minus 1</text>\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = y_min + (y_max - y_min) * i / 5.0;
        os << "<line x1=\"" << left << "\" x2=\"" << left + pw << "\" y1=\"" << num(py(v)) << "\" y2=\"" << num(py(v))
           << "\" stroke=\"#e0e0e0\"/>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << num(py(v) + 4) << "\" text-anchor=\"end\">" << label(v)
           << "</text>\n";
        const double t = 1.0 + (t_max - 1.0) * i / 5.0;
        os << "<text x=\"" << num(px(t)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
           << label(std::round(t)) << "</text>\n";
    }
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">t</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = palette[i % (sizeof palette / sizeof *palette)];
        const std::size_t stride = std::max<std::size_t>(1, s.t.size() / 1500);
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < s.t.size(); k += stride)
            os << num(px(static_cast<double>(s.t[k]))) << "," << num(py(s.mean_excess[k])) << " ";
        if (!s.t.empty() && (s.t.size() - 1) % stride != 0)
            os << num(px(static_cast<double>(s.t.back()))) << "," << num(py(s.mean_excess.back()));
        os << "\"/>\n";
        const double ly = top + 16 + 20.0 * static_cast<double>(i);
        os << "<line x1=\"" << left + pw + 12 << "\" x2=\"" << left + pw + 40 << "\" y1=\"" << ly << "\" y2=\"" << ly
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 46 << "\" y=\"" << ly + 4 << "\">" << escape(s.algorithm) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void emit_chart(const std::string& csv_path, const std::string& out_path) {
    const std::string svg = render_chart_svg(load_chart_series(csv_path));
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + out_path);
    out << svg;
    out.flush();
    if (!out) {
        out.close();
        std::remove(out_path.c_str());
        throw IoError("write failed: " + out_path);
    }
}

}  // namespace uqo
