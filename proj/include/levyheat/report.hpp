// CSV / JSON / SVG emission and grid parsing for the command-line tools.
// Floats are serialized with 17 significant digits so tables round-trip
// exactly and repeated runs are byte-identical.
#pragma once

#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "levyheat/bounds.hpp"
#include "levyheat/kernels.hpp"

namespace levyheat {

inline std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// "lo:hi:Nlog" or "lo:hi:Nlin"; returns a sorted grid.
inline std::vector<double> parse_grid(const std::string& s) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw std::invalid_argument("grid must be lo:hi:Nlog or lo:hi:Nlin, got " + s);
    }
    const double lo = std::stod(s.substr(0, c1));
    const double hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    std::string tail = s.substr(c2 + 1);
    bool logspace;
    if (tail.size() > 3 && tail.substr(tail.size() - 3) == "log") {
        logspace = true;
    } else if (tail.size() > 3 && tail.substr(tail.size() - 3) == "lin") {
        logspace = false;
    } else {
        throw std::invalid_argument("grid spec must end in log or lin: " + s);
    }
    const int n = std::stoi(tail.substr(0, tail.size() - 3));
    if (n < 1) throw std::invalid_argument("grid needs at least one point: " + s);
    if (!(hi >= lo)) throw std::invalid_argument("grid needs hi >= lo: " + s);
    if (logspace && !(lo > 0.0)) {
        throw std::invalid_argument("log grid needs lo > 0: " + s);
    }
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        const double f = (n == 1) ? 0.0 : double(i) / (n - 1);
        g[i] = logspace ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    return g;
}

// comma-separated list of floats
inline std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("empty list: " + s);
    return out;
}

// Runs fn(i) for i in [0, n) on `jobs` threads; results must be written into
// index-addressed slots by the callable, so output order never depends on
// the schedule.
inline void run_indexed(size_t n, int jobs, const std::function<void(size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const int k = std::min<size_t>(jobs, n);
    for (int j = 0; j < k; ++j) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

inline nlohmann::json estimate_report_summary(const EstimateReport& rep) {
    nlohmann::json j;
    j["claim"] = rep.claim;
    j["c_min"] = rep.c_min;
    j["c_max"] = rep.c_max;
    j["verdict"] = to_string(rep.verdict);
    j["points"] = rep.grid.size();
    if (!rep.deviations.empty()) {
        j["deviation_final"] = rep.deviations.back();
        j["trend_nonincreasing"] = rep.trend_nonincreasing;
        j["limit_constant"] = rep.limit_constant;
    }
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

inline std::string estimate_report_csv(const EstimateReport& rep) {
    std::string out = "t,x,computed,envelope,ratio\n";
    for (size_t i = 0; i < rep.grid.size(); ++i) {
        out += format_float(rep.grid[i][0]) + "," + format_float(rep.grid[i][1]) + "," +
               format_float(rep.computed[i]) + "," + format_float(rep.envelope[i]) + "," +
               format_float(rep.ratios[i]) + "\n";
    }
    return out;
}

inline std::string sweep_report_csv(const EstimateReport& rep) {
    std::string out = "k,t,x,ratio,deviation\n";
    for (size_t i = 0; i < rep.grid.size(); ++i) {
        out += std::to_string(i) + "," + format_float(rep.grid[i][0]) + "," +
               format_float(rep.grid[i][1]) + "," + format_float(rep.ratios[i]) + "," +
               format_float(rep.deviations[i]) + "\n";
    }
    return out;
}

// Self-contained SVG log-log line plot of (k, deviation); axes in log10.
inline std::string svg_deviation_plot(const EstimateReport& rep,
                                      const std::string& title) {
    const int W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
    std::vector<double> ys;
    for (double d : rep.deviations) ys.push_back(std::log10(std::max(d, 1e-300)));
    double ymin = 1e300, ymax = -1e300;
    for (double y : ys) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (!(ymax > ymin)) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double xmin = 0.0, xmax = std::max<double>(1.0, ys.size() - 1.0);
    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
    svg << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR
        << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\""
        << H - MB << "\" stroke=\"black\"/>\n";
    for (int yt = (int)std::ceil(ymin); yt <= (int)std::floor(ymax); ++yt) {
        svg << "<line x1=\"" << ML - 4 << "\" y1=\"" << py(yt) << "\" x2=\"" << ML
            << "\" y2=\"" << py(yt) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << ML - 8 << "\" y=\"" << py(yt) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e"
            << yt << "</text>\n";
    }
    for (size_t k = 0; k < ys.size(); ++k) {
        svg << "<text x=\"" << px((double)k) << "\" y=\"" << H - MB + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << k << "</text>\n";
    }
    svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">sweep index k</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (size_t k = 0; k < ys.size(); ++k) {
        svg << px((double)k) << "," << py(ys[k]) << " ";
    }
    svg << "\"/>\n";
    for (size_t k = 0; k < ys.size(); ++k) {
        svg << "<circle cx=\"" << px((double)k) << "\" cy=\"" << py(ys[k])
            << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

}  // namespace levyheat
