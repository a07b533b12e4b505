#include "umwe/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace umwe {

const char* const kTrajectoryCsvHeader =
    "t,i,N,D,alpha,beta,mu,nu,a,i_fix,regime,delta_alpha_crit,"
    "delta_beta_crit,delta_mu_crit,delta_nu_crit,delta_Delta_crit,"
    "dir_delta_Delta,fired_rules";

std::string format_double(double v, int precision) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, v);
    return buffer;
}

void check_writable(const std::string& path) {
    std::ofstream probe(path, std::ios::app);
    if (!probe) {
        throw ModelError(ErrorCode::Io, "path is not writable: " + path);
    }
}

namespace {

std::string opt_field(const std::optional<double>& v, int precision) {
    return v ? format_double(*v, precision) : std::string();
}

}  // namespace

void write_csv(const Trajectory& tr, const RunConfig& cfg, std::ostream& out) {
    if (tr.records.empty()) {
        throw ModelError(ErrorCode::Validation,
                         "cannot serialize an empty trajectory");
    }
    int precision = cfg.precision;
    long every = std::max(tr.sample_every, 1L);
    out << kTrajectoryCsvHeader << "\n";
    for (const TrajectoryRecord& rec : tr.records) {
        if (rec.t % every != 0) continue;
        const RiskReport& risk = rec.risk;
        out << rec.t << ',' << format_double(rec.i, precision) << ','
            << format_double(rec.n_loans, precision) << ','
            << format_double(rec.d_defaults, precision) << ','
            << format_double(rec.params.alpha, precision) << ','
            << format_double(rec.params.beta, precision) << ','
            << format_double(rec.params.mu, precision) << ','
            << format_double(rec.params.nu, precision) << ','
            << format_double(risk.a, precision) << ','
            << opt_field(risk.i_fix, precision) << ','
            << to_string(risk.regime.kind) << ','
            << format_double(risk.entry(ParamSelector::Alpha).stability_abs,
                             precision)
            << ','
            << format_double(risk.entry(ParamSelector::Beta).stability_abs,
                             precision)
            << ','
            << format_double(risk.entry(ParamSelector::Mu).stability_abs,
                             precision)
            << ','
            << format_double(risk.entry(ParamSelector::Nu).stability_abs,
                             precision)
            << ','
            << format_double(risk.entry(ParamSelector::Delta).stability_abs,
                             precision)
            << ','
            << opt_field(risk.entry(ParamSelector::Delta).direction_abs,
                         precision)
            << ',';
        for (size_t n = 0; n < rec.fired_rules.size(); ++n) {
            if (n > 0) out << ';';
            out << rec.fired_rules[n];
        }
        out << "\n";
    }
}

void emit_csv(const Trajectory& tr, const RunConfig& cfg,
              const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ModelError(ErrorCode::Io, "cannot open for write: " + path);
    write_csv(tr, cfg, out);
    out.flush();
    if (!out) throw ModelError(ErrorCode::Io, "write failed: " + path);
}

void write_sweep(const SweepSpec& spec, const RunConfig& cfg,
                 std::ostream& out) {
    spec.validate();
    int precision = cfg.precision;
    out << "value,a,i_fix,regime,delta_Delta_crit\n";
    for (long n = 0; n < spec.steps; ++n) {
        double value = spec.grid_value(n);
        Params p = spec.params;
        double i0 = spec.i0;
        switch (spec.target) {
            case SweepTarget::Alpha: p.alpha = value; break;
            case SweepTarget::Beta: p.beta = value; break;
            case SweepTarget::Mu: p.mu = value; break;
            case SweepTarget::Nu: p.nu = value; break;
            case SweepTarget::K: p.k = value; break;
            case SweepTarget::L: p.l = value; break;
            case SweepTarget::I0: i0 = value; break;
        }
        Regime regime = classify(p, i0, spec.guards);
        out << format_double(value, precision) << ','
            << format_double(regime.a, precision) << ','
            << opt_field(regime.i_fix, precision) << ','
            << to_string(regime.kind) << ','
            << format_double(
                   stability_distance(p, ParamSelector::Delta,
                                      DistanceMode::Absolute),
                   precision)
            << "\n";
    }
}

void run_sweep(const SweepSpec& spec, const RunConfig& cfg,
               const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ModelError(ErrorCode::Io, "cannot open for write: " + path);
    write_sweep(spec, cfg, out);
    out.flush();
    if (!out) throw ModelError(ErrorCode::Io, "write failed: " + path);
}

// ---------------------------------------------------------------------------
// SVG chart
// ---------------------------------------------------------------------------

namespace {

constexpr double kWidth = 900.0;
constexpr double kPanelHeight = 220.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 70.0;
constexpr double kMarginTop = 30.0;
constexpr double kPanelGap = 40.0;

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void widen(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    static Range of(const std::vector<double>& values) {
        Range r{std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
        for (double v : values) {
            if (std::isfinite(v)) {
                r.lo = std::min(r.lo, v);
                r.hi = std::max(r.hi, v);
            }
        }
        if (!std::isfinite(r.lo)) return {0.0, 1.0};
        if (r.hi - r.lo < 1e-12) {
            r.lo -= 0.5;
            r.hi += 0.5;
        }
        return r;
    }
};

std::string fmt(double v) { return format_double(v, 6); }

class Panel {
  public:
    Panel(std::ostream& out, double top, Range x, Range y)
        : out_(out), top_(top), x_(x), y_(y) {}

    double sx(double x) const {
        return kMarginLeft + (x - x_.lo) / (x_.hi - x_.lo) *
                                 (kWidth - kMarginLeft - kMarginRight);
    }
    double sy(double y) const {
        return top_ + kPanelHeight -
               (y - y_.lo) / (y_.hi - y_.lo) * kPanelHeight;
    }

    void frame(const std::string& title) {
        out_ << "<rect x='" << fmt(kMarginLeft) << "' y='" << fmt(top_)
             << "' width='" << fmt(kWidth - kMarginLeft - kMarginRight)
             << "' height='" << fmt(kPanelHeight)
             << "' fill='none' stroke='#888' stroke-width='1'/>\n";
        out_ << "<text x='" << fmt(kMarginLeft) << "' y='" << fmt(top_ - 8)
             << "' font-family='monospace' font-size='13'>" << title
             << "</text>\n";
    }

    // Polyline that breaks at non-finite samples.
    void series(const std::vector<double>& ts, const std::vector<double>& ys,
                const char* color,
                const Range* y_override = nullptr) {
        const Range& yr = y_override ? *y_override : y_;
        std::ostringstream points;
        bool open = false;
        auto flush = [&]() {
            if (open) {
                out_ << "<polyline fill='none' stroke='" << color
                     << "' stroke-width='1.2' points='" << points.str()
                     << "'/>\n";
            }
            points.str("");
            open = false;
        };
        for (size_t n = 0; n < ts.size(); ++n) {
            if (!std::isfinite(ys[n])) {
                flush();
                continue;
            }
            double py = top_ + kPanelHeight -
                        (ys[n] - yr.lo) / (yr.hi - yr.lo) * kPanelHeight;
            points << fmt(sx(ts[n])) << ',' << fmt(py) << ' ';
            open = true;
        }
        flush();
    }

    void hline(double y, const char* color, const std::string& label) {
        double py = sy(y);
        if (py < top_ || py > top_ + kPanelHeight) return;
        out_ << "<line x1='" << fmt(kMarginLeft) << "' y1='" << fmt(py)
             << "' x2='" << fmt(kWidth - kMarginRight) << "' y2='" << fmt(py)
             << "' stroke='" << color << "' stroke-dasharray='4 3'/>\n";
        out_ << "<text x='" << fmt(kWidth - kMarginRight + 4) << "' y='"
             << fmt(py + 4) << "' font-family='monospace' font-size='11'>"
             << label << "</text>\n";
    }

    void axis_labels(const char* lo_label, const char* hi_label) {
        out_ << "<text x='4' y='" << fmt(top_ + kPanelHeight)
             << "' font-family='monospace' font-size='11'>" << lo_label
             << "</text>\n";
        out_ << "<text x='4' y='" << fmt(top_ + 12)
             << "' font-family='monospace' font-size='11'>" << hi_label
             << "</text>\n";
    }

  private:
    std::ostream& out_;
    double top_;
    Range x_, y_;
};

}  // namespace

void write_chart(const Trajectory& tr, std::ostream& out) {
    if (tr.records.empty()) {
        throw ModelError(ErrorCode::Validation,
                         "cannot chart an empty trajectory");
    }
    std::vector<double> ts, log_rate, alphas, betas, d_alpha, d_delta, dir_delta;
    ts.reserve(tr.records.size());
    for (const TrajectoryRecord& rec : tr.records) {
        ts.push_back(static_cast<double>(rec.t));
        log_rate.push_back(std::log10(rec.i));
        alphas.push_back(rec.params.alpha);
        betas.push_back(rec.params.beta);
        d_alpha.push_back(rec.risk.entry(ParamSelector::Alpha).stability_abs);
        d_delta.push_back(rec.risk.entry(ParamSelector::Delta).stability_abs);
        const auto& dir = rec.risk.entry(ParamSelector::Delta).direction_abs;
        dir_delta.push_back(dir ? *dir
                                : std::numeric_limits<double>::quiet_NaN());
    }
    Range xr = Range::of(ts);
    double total_height =
        kMarginTop + 3 * kPanelHeight + 3 * kPanelGap;

    out << "<?xml version='1.0' encoding='UTF-8'?>\n";
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << fmt(kWidth)
        << "' height='" << fmt(total_height) << "' viewBox='0 0 "
        << fmt(kWidth) << ' ' << fmt(total_height) << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";

    // Panel 1: interest rate on a log10 scale with the fixed-point line.
    {
        Range yr = Range::of(log_rate);
        std::optional<double> ifix;
        for (auto it = tr.records.rbegin(); it != tr.records.rend(); ++it) {
            if (it->risk.i_fix) {
                ifix = *it->risk.i_fix;
                break;
            }
        }
        if (ifix) yr.widen(std::log10(*ifix));
        Panel panel(out, kMarginTop, xr, yr);
        panel.frame("interest rate i(t), log10 scale");
        panel.series(ts, log_rate, "#1f77b4");
        if (ifix) {
            panel.hline(std::log10(*ifix), "#d62728", "i_fix");
        }
        panel.axis_labels(fmt(yr.lo).c_str(), fmt(yr.hi).c_str());
    }

    // Panel 2: alpha (left axis) and beta (right axis).
    {
        double top = kMarginTop + kPanelHeight + kPanelGap;
        Range ya = Range::of(alphas);
        Range yb = Range::of(betas);
        Panel panel(out, top, xr, ya);
        panel.frame("alpha (left axis), beta (right axis)");
        panel.series(ts, alphas, "#2ca02c");
        panel.series(ts, betas, "#ff7f0e", &yb);
        panel.axis_labels(fmt(ya.lo).c_str(), fmt(ya.hi).c_str());
        out << "<text x='" << fmt(kWidth - kMarginRight + 4) << "' y='"
            << fmt(top + 12) << "' font-family='monospace' font-size='11'>"
            << fmt(yb.hi) << "</text>\n";
        out << "<text x='" << fmt(kWidth - kMarginRight + 4) << "' y='"
            << fmt(top + kPanelHeight) << "' font-family='monospace' "
            << "font-size='11'>" << fmt(yb.lo) << "</text>\n";
    }

    // Panel 3: stability distances and the direction Delta trace.
    {
        double top = kMarginTop + 2 * (kPanelHeight + kPanelGap);
        std::vector<double> all;
        all.insert(all.end(), d_alpha.begin(), d_alpha.end());
        all.insert(all.end(), d_delta.begin(), d_delta.end());
        for (double v : dir_delta) {
            if (std::isfinite(v)) all.push_back(v);
        }
        Range yr = Range::of(all);
        Panel panel(out, top, xr, yr);
        panel.frame("distances: d_alpha_crit, d_Delta_crit, dir d_Delta");
        panel.series(ts, d_alpha, "#9467bd");
        panel.series(ts, d_delta, "#8c564b");
        panel.series(ts, dir_delta, "#17becf");
        panel.hline(0.0, "#aaaaaa", "0");
        panel.axis_labels(fmt(yr.lo).c_str(), fmt(yr.hi).c_str());
    }

    out << "</svg>\n";
}

void emit_chart(const Trajectory& tr, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ModelError(ErrorCode::Io, "cannot open for write: " + path);
    write_chart(tr, out);
    out.flush();
    if (!out) throw ModelError(ErrorCode::Io, "write failed: " + path);
}

}  // namespace umwe
