// Single-threaded reference versions of the window kernels in filters.cpp.
// Written for clarity: closed-form values through ExpPolySeq::value and a
// plain sweep over Window::points().

#include <algorithm>
#include <cmath>

#include "expkern/filters.hpp"

namespace expkern::serial {

WindowedSeq convolve(const Impulse& h, const ExpPolySeq& c, const Window& w) {
  if (h.dim() != c.dim()) throw DimensionMismatch("impulse and sequence dimensions differ");
  WindowedSeq out{w, {}};
  out.values.reserve(w.size());
  for (const auto& alpha : w.points()) {
    Complex s = 0.0;
    for (const auto& [beta, hb] : h.taps()) s += hb * c.value(alpha - beta);
    out.values.push_back(s);
  }
  return out;
}

WindowedSeq convolve(const Impulse& h, const WindowedSeq& c, const Window& w) {
  if (h.dim() != c.window.dim()) throw DimensionMismatch("impulse and sequence dimensions differ");
  WindowedSeq out{w, {}};
  out.values.reserve(w.size());
  for (const auto& alpha : w.points()) {
    Complex s = 0.0;
    for (const auto& [beta, hb] : h.taps()) {
      const MultiIndex src = alpha - beta;
      if (!c.window.contains(src))
        throw std::invalid_argument("samples do not cover " + src.str());
      s += hb * c.at(src);
    }
    out.values.push_back(s);
  }
  return out;
}

ResidualReport kernel_residual(std::span<const Impulse> h, const ExpPolySeq& seq, int pad) {
  ResidualReport report;
  if (seq.empty()) return report;
  const Window w = certified_window(seq).padded(pad);
  for (const auto& term : seq.terms()) {
    const ExpPolySeq single = ExpPolySeq::single(term.theta, term.p);
    ThetaResidual tr{term.theta, 0.0, 0.0};
    for (const auto& f : h) {
      const WindowedSeq r = serial::convolve(f, single, w);
      for (std::size_t i = 0; i < w.size(); ++i) {
        const MultiIndex alpha = w.point(i);
        const double weight = 1.0 + std::abs(exp_term(term.theta, alpha));
        double m = 0.0;
        for (const auto& [beta, hb] : f.taps()) m = std::max(m, std::abs(single.value(alpha - beta)));
        tr.residual = std::max(tr.residual, std::abs(r.values[i]) / weight);
        tr.scale = std::max(tr.scale, f.norm1() * m / weight);
      }
    }
    report.max_residual = std::max(report.max_residual, tr.residual);
    report.per_theta.push_back(std::move(tr));
  }
  return report;
}

}  // namespace expkern::serial
