#include <qsched/bench.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <map>

namespace qsched {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 130.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

struct Stats
{
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

struct Series
{
    std::string solver;
    std::map<std::size_t, Stats> points;
};

using Metric = double BenchRecord::*;

std::vector<Series> aggregate(const std::vector<BenchRecord>& records, Metric metric)
{
    std::vector<std::string> order;
    std::map<std::string, std::map<std::size_t, std::vector<double>>> samples;
    for (const auto& r : records) {
        if (r.status != "ok") {
            continue;
        }
        if (std::find(order.begin(), order.end(), r.solver) == order.end()) {
            order.push_back(r.solver);
        }
        samples[r.solver][r.n_tasks].push_back(r.*metric);
    }
    std::vector<Series> out;
    for (const auto& solver : order) {
        Series s{solver, {}};
        for (const auto& [n, xs] : samples[solver]) {
            double sum = 0.0;
            for (double x : xs) {
                sum += x;
            }
            s.points[n] = {sum / double(xs.size()), *std::min_element(xs.begin(), xs.end()),
                           *std::max_element(xs.begin(), xs.end())};
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string fmt_tick(double v)
{
    if (v == 0.0) {
        return "0";
    }
    return fmt::format("{:.4g}", v);
}

std::string render(const std::vector<Series>& series, const std::string& title, const std::string& ylabel)
{
    std::size_t xmin = std::numeric_limits<std::size_t>::max(), xmax = 0;
    double ymax = 0.0;
    for (const auto& s : series) {
        for (const auto& [n, st] : s.points) {
            xmin = std::min(xmin, n);
            xmax = std::max(xmax, n);
            ymax = std::max(ymax, st.hi);
        }
    }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
    }
    if (xmin == xmax) {
        xmax = xmin + 1;
    }
    if (!(ymax > 0.0)) {
        ymax = 1.0;
    }
    ymax *= 1.05;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double n) { return kLeft + (n - double(xmin)) / double(xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - y / ymax * plot_h; };

    std::string svg;
    svg += fmt::format("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                       "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0f}\" "
                       "height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" "
                       "font-size=\"12\">\n",
                       kWidth, kHeight, kWidth, kHeight);
    svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth,
                       kHeight);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                       kLeft + plot_w / 2.0, title);

    // Axes and ticks.
    svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
                       kLeft, kTop, kTop + plot_h);
    svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n",
                       kLeft, kTop + plot_h, kLeft + plot_w);
    for (int k = 0; k <= 5; ++k) {
        const double y = ymax * k / 5.0;
        svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#ddd\"/>\n",
                           kLeft, py(y), kLeft + plot_w, py(y));
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6.0,
                           py(y) + 4.0, fmt_tick(y));
    }
    std::vector<std::size_t> xs;
    for (const auto& s : series) {
        for (const auto& [n, st] : s.points) {
            xs.push_back(n);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (auto n : xs) {
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", px(double(n)),
                           kTop + plot_h + 18.0, n);
    }
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">number of tasks</text>\n",
                       kLeft + plot_w / 2.0, kHeight - 10.0);
    svg += fmt::format("<text x=\"16\" y=\"{0:.2f}\" text-anchor=\"middle\" "
                       "transform=\"rotate(-90 16 {0:.2f})\">{1}</text>\n",
                       kTop + plot_h / 2.0, ylabel);

    // Series.
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % kPalette.size()];
        std::string points;
        for (const auto& [n, st] : s.points) {
            if (!points.empty()) {
                points += ' ';
            }
            points += fmt::format("{:.2f},{:.2f}", px(double(n)), py(st.mean));
        }
        svg += fmt::format("<g stroke=\"{}\" fill=\"{}\">\n", color, color);
        svg += fmt::format("<polyline fill=\"none\" stroke-width=\"2\" points=\"{}\"/>\n", points);
        for (const auto& [n, st] : s.points) {
            const double x = px(double(n));
            svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\"/>\n", x,
                               py(st.lo), py(st.hi));
            svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{2:.2f}\" x2=\"{1:.2f}\" y2=\"{2:.2f}\"/>\n", x - 4.0,
                               x + 4.0, py(st.lo));
            svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{2:.2f}\" x2=\"{1:.2f}\" y2=\"{2:.2f}\"/>\n", x - 4.0,
                               x + 4.0, py(st.hi));
            svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\"/>\n", x, py(st.mean));
        }
        svg += "</g>\n";
        const double ly = kTop + 10.0 + 20.0 * double(k);
        const double lx = kLeft + plot_w + 15.0;
        svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
                           "stroke-width=\"2\"/>\n",
                           lx, ly, lx + 20.0, ly, color);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", lx + 26.0, ly + 4.0, s.solver);
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace

BenchCharts render_charts(std::string_view csv)
{
    const auto records = bench_from_csv(csv);
    return {render(aggregate(records, &BenchRecord::time_objective), "Execution time", "makespan (s)"),
            render(aggregate(records, &BenchRecord::cost_objective), "Cost", "cost (units)"),
            render(aggregate(records, &BenchRecord::load_objective), "Load", "max composite load")};
}

} // namespace qsched
