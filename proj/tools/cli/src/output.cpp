// Copyright 2026 The causabound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "causabound/cli/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "causabound/baselines.hpp"
#include "causabound/bounds.hpp"
#include "causabound/error.hpp"
#include "causabound/extremal.hpp"

namespace causabound::cli {

std::string format_number(double value, int digits) {
  if (value == 0.0) value = 0.0;  // drops the sign of -0
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, digits);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

namespace {

constexpr int kCsvDigits = 9;
constexpr int kSvgDigits = 6;

std::string csv(double v) { return format_number(v, kCsvDigits); }
std::string csv(const std::optional<double>& v) { return v ? csv(*v) : std::string(); }

// Minimal SVG canvas: a plot box mapping data coordinates to pixels.
struct Panel {
  double left, top, width, height;
  double x_min, x_max, y_min = 0.0, y_max = 1.0;

  double px(double x) const { return left + (x - x_min) / (x_max - x_min) * width; }
  double py(double y) const { return top + (y_max - y) / (y_max - y_min) * height; }
};

std::string num(double v) { return format_number(v, kSvgDigits); }

using Series = std::vector<std::pair<double, double>>;

void polyline(std::ostringstream& os, const Panel& p, const Series& pts, const char* colour,
              const char* extra = "") {
  if (pts.empty()) return;
  os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"" << extra
     << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    os << (i ? " " : "") << num(p.px(pts[i].first)) << "," << num(p.py(pts[i].second));
  }
  os << "\"/>\n";
}

// Filled region between two curves sharing x values.
void band(std::ostringstream& os, const Panel& p, const Series& lo, const Series& hi,
          const char* colour) {
  if (lo.empty()) return;
  os << "<polygon fill=\"" << colour << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
  for (std::size_t i = 0; i < hi.size(); ++i) {
    os << (i ? " " : "") << num(p.px(hi[i].first)) << "," << num(p.py(hi[i].second));
  }
  for (std::size_t i = lo.size(); i-- > 0;) {
    os << " " << num(p.px(lo[i].first)) << "," << num(p.py(lo[i].second));
  }
  os << "\"/>\n";
  polyline(os, p, lo, colour);
  polyline(os, p, hi, colour);
}

void axes(std::ostringstream& os, const Panel& p, double x_step, const char* x_label) {
  os << "<rect x=\"" << num(p.left) << "\" y=\"" << num(p.top) << "\" width=\"" << num(p.width)
     << "\" height=\"" << num(p.height) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double y = 0.2 * i;
    os << "<line x1=\"" << num(p.left - 4) << "\" y1=\"" << num(p.py(y)) << "\" x2=\""
       << num(p.left) << "\" y2=\"" << num(p.py(y)) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(p.left - 7) << "\" y=\"" << num(p.py(y) + 4)
       << "\" text-anchor=\"end\" font-size=\"11\">" << num(y) << "</text>\n";
  }
  // Integer multiples of x_step inside the range.
  const long first = static_cast<long>(std::ceil(p.x_min / x_step - 1e-9));
  const long last = static_cast<long>(std::floor(p.x_max / x_step + 1e-9));
  for (long k = first; k <= last; ++k) {
    const double x = static_cast<double>(k) * x_step;
    os << "<line x1=\"" << num(p.px(x)) << "\" y1=\"" << num(p.top + p.height) << "\" x2=\""
       << num(p.px(x)) << "\" y2=\"" << num(p.top + p.height + 4) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(p.px(x)) << "\" y=\"" << num(p.top + p.height + 17)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << num(x) << "</text>\n";
  }
  os << "<text x=\"" << num(p.left + p.width / 2) << "\" y=\"" << num(p.top + p.height + 34)
     << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
}

void legend(std::ostringstream& os, double x, double y,
            const std::vector<std::pair<const char*, const char*>>& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double row = y + 16.0 * static_cast<double>(i);
    os << "<rect x=\"" << num(x) << "\" y=\"" << num(row - 9) << "\" width=\"12\" height=\"10\" fill=\""
       << entries[i].second << "\" fill-opacity=\"0.6\"/>"
       << "<text x=\"" << num(x + 17) << "\" y=\"" << num(row) << "\" font-size=\"11\">"
       << entries[i].first << "</text>\n";
  }
}

std::string header(double width, double height) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height)
     << "\" font-family=\"sans-serif\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

constexpr const char* kBlue = "#1f77b4";
constexpr const char* kRed = "#d62728";
constexpr const char* kGreen = "#2ca02c";

}  // namespace

std::string profile_csv(const std::vector<ProfileRow>& rows) {
  std::string s = "n,uLB,uUB,oLB,oUB,mLB,mUB\n";
  for (const auto& r : rows) {
    s += std::to_string(r.n) + "," + csv(r.unobserved.lo) + "," + csv(r.unobserved.hi) + "," +
         csv(r.observed.lo) + "," + csv(r.observed.hi) + ",";
    if (r.mixed) s += csv(r.mixed->lo) + "," + csv(r.mixed->hi);
    else s += ",";
    s += "\n";
  }
  return s;
}

std::string profile_svg(const std::vector<ProfileRow>& rows, const std::string& title) {
  std::ostringstream os;
  const double w = 640, h = 420;
  os << header(w, h);
  os << "<text x=\"" << num(w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << title << "</text>\n";
  if (rows.empty()) {
    os << "</svg>\n";
    return os.str();
  }
  const double n_lo = static_cast<double>(rows.front().n);
  const double n_hi = std::max(static_cast<double>(rows.back().n), n_lo + 1.0);
  const Panel p{60, 40, 420, 320, n_lo, n_hi};
  Series ulo, uhi, olo, ohi, mlo, mhi;
  for (const auto& r : rows) {
    const double n = static_cast<double>(r.n);
    ulo.emplace_back(n, r.unobserved.lo);
    uhi.emplace_back(n, r.unobserved.hi);
    olo.emplace_back(n, r.observed.lo);
    ohi.emplace_back(n, r.observed.hi);
    if (r.mixed) {
      mlo.emplace_back(n, r.mixed->lo);
      mhi.emplace_back(n, r.mixed->hi);
    }
  }
  band(os, p, ulo, uhi, kBlue);
  band(os, p, olo, ohi, kRed);
  band(os, p, mlo, mhi, kGreen);
  axes(os, p, nice_step(n_hi - n_lo), "n (steps)");
  legend(os, 495, 60,
         {{"unobserved", kBlue}, {"observed at 1", kRed}, {"alternating", kGreen}});
  os << "</svg>\n";
  return os.str();
}

ComparisonRow compare_at(const TransitionMatrix& law) {
  ComparisonRow row;
  row.tau = law.tau();
  row.rho = law.rho();
  row.simple = simple_bounds(law, 1, 1).interval();
  // Each auxiliary bound has its own preconditions; a throw means "not
  // defined here", which the row records as an empty optional.
  auto attempt = [](auto&& f) {
    try {
      f();
    } catch (const Error&) {
    }
  };
  attempt([&] { row.monotonic = monotonicity_bound(law).lo; });
  attempt([&] { row.two_step = profile(law, 2).observed; });
  attempt([&] { row.infinite_step = limits(law).observed; });
  attempt([&] {
    row.best_two_step = extremal_table(law).cell(Regime::positive, Extremum::smallest, Side::upper).value;
  });
  attempt([&] {
    row.covariate = covariate_construction(law, CovariateKind::unobserved_extremal).pc.lo;
  });
  return row;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string s =
      "tau,rho,simple_lo,simple_hi,monotonic,two_step_lo,two_step_hi,infinite_lo,infinite_hi,"
      "best_two_step,covariate\n";
  for (const auto& r : rows) {
    s += csv(r.tau) + "," + csv(r.rho) + "," + csv(r.simple.lo) + "," + csv(r.simple.hi) + "," +
         csv(r.monotonic) + ",";
    s += r.two_step ? csv(r.two_step->lo) + "," + csv(r.two_step->hi) : std::string(",");
    s += ",";
    s += r.infinite_step ? csv(r.infinite_step->lo) + "," + csv(r.infinite_step->hi)
                         : std::string(",");
    s += "," + csv(r.best_two_step) + "," + csv(r.covariate) + "\n";
  }
  return s;
}

std::string comparison_svg(const std::vector<ComparisonRow>& rows) {
  std::vector<double> rhos;
  for (const auto& r : rows) {
    if (std::find(rhos.begin(), rhos.end(), r.rho) == rhos.end()) rhos.push_back(r.rho);
  }
  const double panel_w = 260, panel_h = 260, gap = 60;
  const double w = 60 + static_cast<double>(rhos.size()) * (panel_w + gap) + 150;
  const double h = panel_h + 110;
  std::ostringstream os;
  os << header(w, h);
  for (std::size_t k = 0; k < rhos.size(); ++k) {
    const Panel p{60 + static_cast<double>(k) * (panel_w + gap), 40, panel_w, panel_h, 0.0, 1.0};
    Series slo, shi, tlo, thi, ilo, ihi, mono, best, cov;
    for (const auto& r : rows) {
      if (r.rho != rhos[k]) continue;
      slo.emplace_back(r.tau, r.simple.lo);
      shi.emplace_back(r.tau, r.simple.hi);
      if (r.two_step) {
        tlo.emplace_back(r.tau, r.two_step->lo);
        thi.emplace_back(r.tau, r.two_step->hi);
      }
      if (r.infinite_step) {
        ilo.emplace_back(r.tau, r.infinite_step->lo);
        ihi.emplace_back(r.tau, r.infinite_step->hi);
      }
      if (r.monotonic) mono.emplace_back(r.tau, *r.monotonic);
      if (r.best_two_step) best.emplace_back(r.tau, *r.best_two_step);
      if (r.covariate) cov.emplace_back(r.tau, *r.covariate);
    }
    band(os, p, slo, shi, "#7f7f7f");
    band(os, p, tlo, thi, kBlue);
    band(os, p, ilo, ihi, kRed);
    polyline(os, p, mono, "black", " stroke-dasharray=\"4 3\"");
    polyline(os, p, best, kGreen);
    polyline(os, p, cov, "#9467bd");
    axes(os, p, 0.2, "tau");
    os << "<text x=\"" << num(p.left + p.width / 2) << "\" y=\"28\" text-anchor=\"middle\" "
       << "font-size=\"13\">rho = " << num(rhos[k]) << "</text>\n";
  }
  legend(os, w - 140, 60,
         {{"simple", "#7f7f7f"},
          {"homogeneous 2-step", kBlue},
          {"infinite-step", kRed},
          {"monotonic", "black"},
          {"best two-step", kGreen},
          {"covariate", "#9467bd"}});
  os << "</svg>\n";
  return os.str();
}

}  // namespace causabound::cli
