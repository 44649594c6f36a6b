// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/charts.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pcoflow/metrics.h"

namespace pcoflow {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        out.push_back(field);
    return out;
}

std::string xml_escape(const std::string& s) {
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

std::string fmt(double v, const char* spec = "%.3f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kW = 720, kH = 420, kMarginL = 80, kMarginR = 170, kMarginT = 40, kMarginB = 50;

// Mean avg_cct per (series, load) over seeds.
std::map<std::string, std::map<double, std::pair<double, int>>>
load_series(const std::vector<ResultRow>& rows) {
    std::map<std::string, std::map<double, std::pair<double, int>>> acc;
    for (const ResultRow& r : rows) {
        auto& cell = acc[r.series()][r.load];
        cell.first += r.avg_cct_us;
        ++cell.second;
    }
    return acc;
}

const char* kCategories[] = {"SN", "LN", "SW", "LW"};

std::map<std::string, std::array<std::pair<double, int>, 4>>
category_series(const std::vector<ResultRow>& rows) {
    std::map<std::string, std::array<std::pair<double, int>, 4>> acc;
    for (const ResultRow& r : rows) {
        auto& cells = acc[r.series()];
        const double vals[4] = {r.cct_sn_us, r.cct_ln_us, r.cct_sw_us, r.cct_lw_us};
        for (int i = 0; i < 4; ++i) {
            cells[i].first += vals[i];
            ++cells[i].second;
        }
    }
    return acc;
}

std::string svg_open(const std::string& title) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kW) +
           "\" height=\"" + std::to_string(kH) + "\" viewBox=\"0 0 " + std::to_string(kW) + " " +
           std::to_string(kH) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(kW) + "\" height=\"" +
           std::to_string(kH) + "\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(kW / 2) + "\" y=\"24\" text-anchor=\"middle\" " +
           "font-family=\"sans-serif\" font-size=\"16\">" + xml_escape(title) + "</text>\n";
    return out;
}

std::string axis_box() {
    std::string out;
    out += "<line x1=\"" + std::to_string(kMarginL) + "\" y1=\"" + std::to_string(kH - kMarginB) +
           "\" x2=\"" + std::to_string(kW - kMarginR) + "\" y2=\"" +
           std::to_string(kH - kMarginB) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + std::to_string(kMarginL) + "\" y1=\"" + std::to_string(kMarginT) +
           "\" x2=\"" + std::to_string(kMarginL) + "\" y2=\"" + std::to_string(kH - kMarginB) +
           "\" stroke=\"black\"/>\n";
    return out;
}

std::string text_at(double x, double y, const std::string& s, const char* anchor = "middle",
                    int size = 11) {
    return "<text x=\"" + fmt(x, "%.1f") + "\" y=\"" + fmt(y, "%.1f") + "\" text-anchor=\"" +
           anchor + "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) + "\">" +
           xml_escape(s) + "</text>\n";
}

} // namespace

std::vector<ResultRow> parse_results_csv(const std::string& text) {
    std::stringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("results csv: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kResultsCsvHeader)
        throw std::invalid_argument("results csv: unexpected header '" + line + "'");

    std::vector<ResultRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 17)
            throw std::invalid_argument("results csv line " + std::to_string(lineno) +
                                        ": expected 17 fields, got " + std::to_string(f.size()));
        try {
            ResultRow r;
            r.run_id = std::stoi(f[0]);
            r.scheduler = f[1];
            r.ordering = f[2];
            r.lb = f[3];
            r.topology = f[4];
            r.load = std::stod(f[5]);
            r.seed = std::stoull(f[6]);
            r.avg_cct_us = std::stod(f[7]);
            r.avg_fct_us = std::stod(f[8]);
            r.cct_sn_us = std::stod(f[9]);
            r.cct_ln_us = std::stod(f[10]);
            r.cct_sw_us = std::stod(f[11]);
            r.cct_lw_us = std::stod(f[12]);
            r.drops = std::stoll(f[13]);
            r.ce_marks = std::stoll(f[14]);
            r.retransmissions = std::stoll(f[15]);
            r.reorder_events = std::stoll(f[16]);
            rows.push_back(std::move(r));
        } catch (const std::exception&) {
            throw std::invalid_argument("results csv line " + std::to_string(lineno) +
                                        ": malformed field");
        }
    }
    return rows;
}

std::string cct_vs_load_series_csv(const std::vector<ResultRow>& rows) {
    std::string out = "series,load,avg_cct_us,runs\n";
    for (const auto& [name, points] : load_series(rows))
        for (const auto& [load, cell] : points)
            out += name + "," + fmt(load, "%.2f") + "," + fmt(cell.first / cell.second) + "," +
                   std::to_string(cell.second) + "\n";
    return out;
}

std::string cct_by_category_series_csv(const std::vector<ResultRow>& rows) {
    std::string out = "series,category,avg_cct_us,runs\n";
    for (const auto& [name, cells] : category_series(rows))
        for (int i = 0; i < 4; ++i)
            out += name + "," + kCategories[i] + "," + fmt(cells[i].first / cells[i].second) +
                   "," + std::to_string(cells[i].second) + "\n";
    return out;
}

std::string cct_vs_load_svg(const std::vector<ResultRow>& rows) {
    if (rows.empty())
        throw std::invalid_argument("cct_vs_load_svg: no rows");
    auto series = load_series(rows);
    double max_y = 0.0, min_x = 1.0, max_x = 0.0;
    for (const auto& [name, points] : series)
        for (const auto& [load, cell] : points) {
            max_y = std::max(max_y, cell.first / cell.second);
            min_x = std::min(min_x, load);
            max_x = std::max(max_x, load);
        }
    if (max_y <= 0.0)
        max_y = 1.0;
    if (max_x <= min_x) { // single load: pad so the point sits mid-axis
        min_x = std::max(0.0, min_x - 0.1);
        max_x = max_x + 0.1;
    }
    const double plot_w = kW - kMarginL - kMarginR, plot_h = kH - kMarginT - kMarginB;
    auto xpix = [&](double load) { return kMarginL + (load - min_x) / (max_x - min_x) * plot_w; };
    auto ypix = [&](double v) { return kH - kMarginB - v / (max_y * 1.05) * plot_h; };

    std::string out = svg_open("Average coflow completion time vs offered load");
    out += axis_box();
    for (int i = 0; i <= 4; ++i) {
        double v = max_y * 1.05 * i / 4;
        out += text_at(kMarginL - 6, ypix(v) + 4, fmt(v, "%.0f"), "end");
        double lx = min_x + (max_x - min_x) * i / 4;
        out += text_at(xpix(lx), kH - kMarginB + 16, fmt(lx, "%.2f"));
    }
    out += text_at(kMarginL + plot_w / 2, kH - 12, "offered load");
    out += text_at(18, kMarginT - 10, "avg CCT (us)", "start");

    int idx = 0;
    for (const auto& [name, points] : series) {
        const char* color = kPalette[idx % 8];
        std::string poly = "<polyline fill=\"none\" stroke=\"";
        poly += color;
        poly += "\" stroke-width=\"2\" points=\"";
        for (const auto& [load, cell] : points)
            poly += fmt(xpix(load), "%.1f") + "," + fmt(ypix(cell.first / cell.second), "%.1f") + " ";
        poly += "\"/>\n";
        out += poly;
        for (const auto& [load, cell] : points)
            out += "<circle cx=\"" + fmt(xpix(load), "%.1f") + "\" cy=\"" +
                   fmt(ypix(cell.first / cell.second), "%.1f") + "\" r=\"3\" fill=\"" + color +
                   "\"/>\n";
        double ly = kMarginT + 16 + 16 * idx;
        out += "<rect x=\"" + std::to_string(kW - kMarginR + 10) + "\" y=\"" + fmt(ly - 9, "%.1f") +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        out += text_at(kW - kMarginR + 26, ly, name, "start");
        ++idx;
    }
    out += "</svg>\n";
    return out;
}

std::string cct_by_category_svg(const std::vector<ResultRow>& rows) {
    if (rows.empty())
        throw std::invalid_argument("cct_by_category_svg: no rows");
    auto series = category_series(rows);
    double max_y = 0.0;
    for (const auto& [name, cells] : series)
        for (const auto& cell : cells)
            max_y = std::max(max_y, cell.first / cell.second);
    if (max_y <= 0.0)
        max_y = 1.0;
    const double plot_w = kW - kMarginL - kMarginR, plot_h = kH - kMarginT - kMarginB;
    auto ypix = [&](double v) { return kH - kMarginB - v / (max_y * 1.05) * plot_h; };

    std::string out = svg_open("Average CCT by coflow category");
    out += axis_box();
    for (int i = 0; i <= 4; ++i) {
        double v = max_y * 1.05 * i / 4;
        out += text_at(kMarginL - 6, ypix(v) + 4, fmt(v, "%.0f"), "end");
    }
    out += text_at(18, kMarginT - 10, "avg CCT (us)", "start");

    const int n_series = static_cast<int>(series.size());
    const double group_w = plot_w / 4.0;
    const double bar_w = group_w / (n_series + 1);
    int idx = 0;
    for (const auto& [name, cells] : series) {
        const char* color = kPalette[idx % 8];
        for (int cat = 0; cat < 4; ++cat) {
            double v = cells[cat].first / cells[cat].second;
            double x = kMarginL + cat * group_w + bar_w * (idx + 0.5);
            double y = ypix(v);
            out += "<rect x=\"" + fmt(x, "%.1f") + "\" y=\"" + fmt(y, "%.1f") + "\" width=\"" +
                   fmt(bar_w * 0.9, "%.1f") + "\" height=\"" + fmt(kH - kMarginB - y, "%.1f") +
                   "\" fill=\"" + color + "\"/>\n";
        }
        double ly = kMarginT + 16 + 16 * idx;
        out += "<rect x=\"" + std::to_string(kW - kMarginR + 10) + "\" y=\"" + fmt(ly - 9, "%.1f") +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        out += text_at(kW - kMarginR + 26, ly, name, "start");
        ++idx;
    }
    for (int cat = 0; cat < 4; ++cat)
        out += text_at(kMarginL + cat * group_w + group_w / 2, kH - kMarginB + 16,
                       kCategories[cat]);
    out += "</svg>\n";
    return out;
}

} // namespace pcoflow
