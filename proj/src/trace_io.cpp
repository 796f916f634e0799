#include "attobs/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace attobs {
namespace {

constexpr char kTraceHeader[] = "t,att_err_rad,omega_err,lyapunov,innovation_norm,commutation_residual";
constexpr char kLogHeader[] =
    "t,a0x,a0y,a0z,a1x,a1y,a1z,a2x,a2y,a2z,a3x,a3y,a3z,mx,my,mz";

std::string format_full(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::vector<std::vector<double>> read_csv(const std::string& path, const char* expected_header,
                                          size_t columns) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header)
        throw std::runtime_error("unexpected header in " + path + ": " + line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::vector<double> values;
        values.reserve(columns);
        while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
        if (values.size() != columns)
            throw std::runtime_error("bad column count in " + path);
        rows.push_back(std::move(values));
    }
    return rows;
}

}  // namespace

void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path) {
    if (trace.empty()) throw std::runtime_error("refusing to write empty trace: " + path);
    auto out = open_out(path);
    out << kTraceHeader << '\n';
    for (const auto& r : trace) {
        out << format_full(r.t) << ',' << format_full(r.att_err_rad) << ','
            << format_full(r.omega_err) << ',' << format_full(r.lyapunov) << ','
            << format_full(r.innovation_norm) << ',' << format_full(r.commutation_residual)
            << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
    std::vector<TraceRecord> trace;
    for (const auto& row : read_csv(path, kTraceHeader, 6))
        trace.push_back({row[0], row[1], row[2], row[3], row[4], row[5]});
    return trace;
}

void write_measurement_csv(const std::vector<MeasurementFrame>& log, const std::string& path) {
    if (log.empty()) throw std::runtime_error("refusing to write empty log: " + path);
    auto out = open_out(path);
    out << kLogHeader << '\n';
    for (const auto& f : log) {
        out << format_full(f.t);
        for (const auto& a : f.accel)
            out << ',' << format_full(a.x()) << ',' << format_full(a.y()) << ','
                << format_full(a.z());
        out << ',' << format_full(f.mag.x()) << ',' << format_full(f.mag.y()) << ','
            << format_full(f.mag.z()) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<MeasurementFrame> read_measurement_csv(const std::string& path) {
    std::vector<MeasurementFrame> log;
    for (const auto& row : read_csv(path, kLogHeader, 16)) {
        MeasurementFrame f;
        f.t = row[0];
        for (size_t i = 0; i < 4; ++i)
            f.accel[i] = Vec3(row[1 + 3 * i], row[2 + 3 * i], row[3 + 3 * i]);
        f.mag = Vec3(row[13], row[14], row[15]);
        log.push_back(f);
    }
    return log;
}

namespace {

struct Series {
    const char* label;
    const char* color;
    double TraceRecord::*field;
};

constexpr Series kSeries[] = {
    {"attitude error (rad)", "#c0392b", &TraceRecord::att_err_rad},
    {"angular velocity error (rad/s)", "#2471a3", &TraceRecord::omega_err},
    {"lyapunov", "#1e8449", &TraceRecord::lyapunov},
};

constexpr double kLogFloor = 1e-18;

double clamped_log10(double v) {
    return std::log10(std::max(v, kLogFloor));
}

}  // namespace

void write_plot_svg(const std::vector<TraceRecord>& trace, const std::string& path) {
    if (trace.empty()) throw std::runtime_error("refusing to plot empty trace: " + path);

    const double width = 960, height = 540;
    const double left = 70, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    const double t0 = trace.front().t;
    const double t1 = std::max(trace.back().t, t0 + 1e-12);
    double lo = 0.0, hi = -17.0;  // log10 bounds
    for (const auto& r : trace)
        for (const auto& s : kSeries) {
            const double v = clamped_log10(r.*s.field);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    lo = std::floor(lo);
    hi = std::ceil(hi);
    if (hi <= lo) hi = lo + 1.0;

    const auto x_of = [&](double t) { return left + (t - t0) / (t1 - t0) * plot_w; };
    const auto y_of = [&](double v) {
        return top + (hi - clamped_log10(v)) / (hi - lo) * plot_h;
    };

    // Cap the polyline sizes; the shape survives a coarse stride.
    const size_t stride = std::max<size_t>(1, trace.size() / 2000);

    auto out = open_out(path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">estimation errors over time "
           "(log scale)</text>\n";

    // gridlines and tick labels per decade
    for (double d = lo; d <= hi + 0.5; d += 1.0) {
        const double y = top + (hi - d) / (hi - lo) * plot_h;
        out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + plot_w
            << "\" y2=\"" << y << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e"
            << static_cast<int>(d) << "</text>\n";
    }
    const int x_ticks = 6;
    for (int i = 0; i <= x_ticks; ++i) {
        const double t = t0 + (t1 - t0) * i / x_ticks;
        const double x = x_of(t);
        out << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\""
            << top + plot_h << "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
        char label[32];
        std::snprintf(label, sizeof(label), "%.4g", t);
        out << "<text x=\"" << x << "\" y=\"" << top + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label
            << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">time (s)"
           "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    int legend_row = 0;
    for (const auto& s : kSeries) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        for (size_t i = 0; i < trace.size(); i += stride) {
            const auto& r = trace[i];
            out << x_of(r.t) << ',' << y_of(r.*s.field) << ' ';
        }
        const auto& last = trace.back();
        out << x_of(last.t) << ',' << y_of(last.*s.field);
        out << "\"/>\n";

        const double ly = top + 16 + 18 * legend_row++;
        out << "<line x1=\"" << left + plot_w - 230 << "\" y1=\"" << ly << "\" x2=\""
            << left + plot_w - 205 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << left + plot_w - 198 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace attobs
