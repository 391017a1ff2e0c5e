#include "wsbr/figures.hpp"

#include "wsbr/certify.hpp"
#include "wsbr/errors.hpp"
#include "wsbr/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace wsbr {

namespace {

struct Curve {
    std::string label;
    std::vector<double> x, y;
    std::string color = "#1f77b4";
    bool dashed = false;
};

struct Panel {
    std::string title;
    std::vector<Curve> curves;
    std::string note;
};

const char* palette(int i)
{
    static const char* c[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    return c[i % 6];
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string esc(const std::string& s)
{
    std::string o;
    for (char c : s) {
        if (c == '<')
            o += "&lt;";
        else if (c == '>')
            o += "&gt;";
        else if (c == '&')
            o += "&amp;";
        else
            o += c;
    }
    return o;
}

std::vector<double> nice_ticks(double lo, double hi)
{
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
        t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return t;
}

// Multi-panel SVG; each panel gets its own axes, a zero line and a legend.
std::string render(const std::string& title, const std::vector<Panel>& panels, int cols)
{
    const int pw = 380, ph = 280, top = 40;
    const int rows = static_cast<int>((panels.size() + cols - 1) / cols);
    const int W = cols * pw, H = top + rows * ph;
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << esc(title) << "</text>\n";
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Panel& pan = panels[p];
        const int ox = static_cast<int>(p % cols) * pw, oy = top + static_cast<int>(p / cols) * ph;
        const double l = ox + 55, r = ox + pw - 15, t = oy + 28, b = oy + ph - 40;
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
        for (const Curve& c : pan.curves)
            for (std::size_t i = 0; i < c.x.size(); ++i) {
                if (!std::isfinite(c.y[i]))
                    continue;
                xmin = std::min(xmin, c.x[i]);
                xmax = std::max(xmax, c.x[i]);
                ymin = std::min(ymin, c.y[i]);
                ymax = std::max(ymax, c.y[i]);
            }
        if (!(xmax > xmin))
            xmax = xmin + 1.0;
        if (!(ymax > ymin)) {
            ymin -= 0.5;
            ymax += 0.5;
        }
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
        auto X = [&](double v) { return l + (v - xmin) / (xmax - xmin) * (r - l); };
        auto Y = [&](double v) { return b - (v - ymin) / (ymax - ymin) * (b - t); };
        o << "<g>\n<text x=\"" << (l + r) / 2 << "\" y=\"" << oy + 18 << "\" text-anchor=\"middle\" font-size=\"12\">"
          << esc(pan.title) << "</text>\n";
        o << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l << "\" height=\"" << b - t
          << "\" fill=\"none\" stroke=\"#444\"/>\n";
        for (double v : nice_ticks(xmin, xmax))
            o << "<text x=\"" << X(v) << "\" y=\"" << b + 14 << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt(v)
              << "</text>\n";
        for (double v : nice_ticks(ymin, ymax))
            o << "<text x=\"" << l - 4 << "\" y=\"" << Y(v) + 3 << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(v)
              << "</text>\n";
        if (ymin < 0.0 && ymax > 0.0)
            o << "<line x1=\"" << l << "\" y1=\"" << Y(0) << "\" x2=\"" << r << "\" y2=\"" << Y(0)
              << "\" stroke=\"#999\" stroke-width=\"0.8\"/>\n";
        int li = 0;
        for (const Curve& c : pan.curves) {
            o << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.2\"";
            if (c.dashed)
                o << " stroke-dasharray=\"4 3\"";
            o << " points=\"";
            char buf[64];
            for (std::size_t i = 0; i < c.x.size(); ++i) {
                if (!std::isfinite(c.y[i]))
                    continue;
                std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(c.x[i]), Y(c.y[i]));
                o << buf;
            }
            o << "\"/>\n";
            if (!c.label.empty()) {
                const double ly = t + 12 + 12 * li++;
                o << "<line x1=\"" << r - 120 << "\" y1=\"" << ly - 3 << "\" x2=\"" << r - 104 << "\" y2=\"" << ly - 3
                  << "\" stroke=\"" << c.color << "\"" << (c.dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n"
                  << "<text x=\"" << r - 100 << "\" y=\"" << ly << "\" font-size=\"9\">" << esc(c.label) << "</text>\n";
            }
        }
        if (!pan.note.empty())
            o << "<text x=\"" << l << "\" y=\"" << b + 28 << "\" font-size=\"9\">" << esc(pan.note) << "</text>\n";
        o << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::vector<double> grid(double lo, double hi, int n)
{
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / n;
    return g;
}

const double kKappas[] = {0.5, 0.55, 0.56};

std::string fig_w(const FigureOptions& opt)
{
    const Roughness r = Roughness::from_gamma(std::sqrt(0.5));
    Curve c;
    c.label = "W";
    c.x = grid(0.0, 1.0, std::max(opt.samples, 2000));
    for (double x : c.x)
        c.y.push_back(eval_W(x, r, 80).mid());
    return render("W on [0,1], gamma = 1/sqrt(2)", {{"W(x) = sum gamma^n cos(2 pi 2^n x)", {c}, ""}}, 1);
}

Panel envelope_panel(Target t, double kappa, const FigureOptions& opt, double x_hi)
{
    const Roughness r = Roughness::from_kappa(kappa);
    const EnvelopePair e = envelope(t, r);
    Curve f{"target", {}, {}, palette(0), false}, lo{"lower", {}, {}, palette(1), true}, hi{"upper", {}, {}, palette(2), true};
    double width = 0.0;
    for (double x : grid(0.0, x_hi, opt.samples)) {
        f.x.push_back(x);
        lo.x.push_back(x);
        hi.x.push_back(x);
        f.y.push_back(normalized_target(t, x, r, opt.terms).mid());
        lo.y.push_back(e.lower(x));
        hi.y.push_back(e.upper(x));
        width = std::max(width, e.upper(x) - e.lower(x));
    }
    return {to_string(t) + " normalized, kappa = " + fmt(kappa), {f, lo, hi}, "envelope width " + fmt(width)};
}

std::string fig_envelopes(const std::vector<Target>& ts, const std::string& title, const FigureOptions& opt)
{
    std::vector<Panel> panels;
    for (Target t : ts)
        for (double k : kKappas)
            panels.push_back(envelope_panel(t, k, opt, t == Target::g1 ? 1.0 : 0.3));
    return render(title, panels, 3);
}

std::string fig_test_point(const FigureOptions&)
{
    std::vector<Panel> panels;
    const std::vector<double> ks = grid(0.5, 0.6, 40);
    std::vector<double> sup_g;
    for (double k : ks)
        sup_g.push_back(certified_sup_abs_g(Roughness::from_kappa(k)));
    for (const CaseSpec& c : table1()) {
        Curve lo{"lower", {}, {}, palette(1), true}, hi{"upper", {}, {}, palette(0), false};
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const BoundedValue v = value_at_test_point(c, Roughness::from_kappa(ks[i]), 3, sup_g[i], false);
            lo.x.push_back(ks[i]);
            hi.x.push_back(ks[i]);
            lo.y.push_back(v.lo);
            hi.y.push_back(v.hi);
        }
        panels.push_back({"case " + std::to_string(c.id), {hi, lo}, ""});
    }
    return render("S(xi,.55) - S(eta,.55) against kappa, per case", panels, 5);
}

std::string fig_aux(char family, const std::vector<int>& ids, double x_hi, const std::string& title,
                    const FigureOptions& opt)
{
    std::vector<Panel> panels;
    for (double k : kKappas) {
        const Roughness r = Roughness::from_kappa(k);
        Panel p{"kappa = " + fmt(k), {}, ""};
        int ci = 0;
        for (int i : ids) {
            Curve c{std::string(1, family) + std::to_string(i), {}, {}, palette(ci++), false};
            for (double x : grid(0.0, x_hi, opt.samples)) {
                c.x.push_back(x);
                c.y.push_back(family == 'k' ? eval_k(i, x, r, opt.terms).mid() : eval_l(i, x, r, opt.terms).mid());
            }
            p.curves.push_back(std::move(c));
        }
        panels.push_back(std::move(p));
    }
    return render(title, panels, 3);
}

std::string fig_bands(int order, const std::string& title, const FigureOptions& opt)
{
    const Roughness r = Roughness::from_kappa(0.55);
    const std::vector<double> xs = grid(0.0, 1.0, std::min(opt.samples, 200));
    std::vector<Panel> panels;
    for (const CaseSpec& c : table1()) {
        const DerivativeBand band = case_derivative_band(c, r, order, xs, 5, opt.terms);
        panels.push_back({"case " + std::to_string(c.id),
                          {{"lower", band.x, band.lo, palette(1), true}, {"upper", band.x, band.hi, palette(0), false}},
                          ""});
    }
    return render(title, panels, 5);
}

}  // namespace

std::string figure_svg(int id, const FigureOptions& opt)
{
    switch (id) {
    case 1: return fig_w(opt);
    case 2: return fig_envelopes({Target::g2}, "-g''/(4 pi^3) with envelopes", opt);
    case 3: return fig_envelopes({Target::g1, Target::g}, "-g'/(4 pi^2) and g/(4 pi) with envelopes", opt);
    case 4: return fig_test_point(opt);
    case 5: return fig_aux('k', {1, 2, 3}, 1.0, "k1, k2, k3", opt);
    case 6: return fig_aux('k', {4}, 0.9, "k4 on [0, 0.9]", opt);
    case 7: return fig_bands(2, "S''(xi,.) - S''(eta,.) bands over each case, kappa = 0.55", opt);
    case 8: return fig_aux('l', {1, 2, 3}, 1.0, "l1, l2, l3", opt);
    case 9: return fig_aux('l', {4}, 1.0, "l4", opt);
    case 10: return fig_bands(1, "S'(xi,.) - S'(eta,.) bands over each case, kappa = 0.55", opt);
    default: throw DomainError("figure id must be in 1..10");
    }
}

std::vector<std::string> write_figures(const std::vector<int>& ids, const std::string& out_dir,
                                       const FigureOptions& opt)
{
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> paths;
    for (int id : ids) {
        const std::string svg = figure_svg(id, opt);
        const std::string path = (std::filesystem::path(out_dir) / ("fig" + std::to_string(id) + ".svg")).string();
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw Error("cannot write " + path);
        f << svg;
        paths.push_back(path);
    }
    return paths;
}

}  // namespace wsbr
