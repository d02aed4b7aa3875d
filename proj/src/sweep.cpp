#include "hessbound/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hessbound {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

QuermassVector polygon_quermass_at(const Polygon2D& poly, double t) {
  const auto loop = detail::clip_offset(poly, t);
  const double a = std::max(0.0, detail::loop_area(loop));
  return QuermassVector(2, Eigen::Vector3d(a, 0.5 * detail::loop_perimeter(loop), std::numbers::pi));
}

Polytope3D polytope_at(const Polytope3D& poly, double t) {
  auto hs = poly.halfspaces();
  for (auto& h : hs) h.offset -= t;
  return Polytope3D::from_halfspaces(hs);
}

QuermassVector polytope_quermass_at(const Polytope3D& poly, double t, double r) {
  for (double shift : {0.0, 1e-9, -1e-9}) {
    try {
      return quermass(polytope_at(poly, std::clamp(t + shift * r, 0.0, r)));
    } catch (const std::exception&) {
    }
  }
  throw NumericalError("sweep: cannot evaluate the inner parallel polytope at t = " + std::to_string(t));
}

std::vector<int> facet_signature(const Polytope3D& poly, double t) {
  std::vector<int> sig(poly.faces().size(), 0);
  try {
    const auto inner = polytope_at(poly, t);
    for (const auto& f : inner.faces()) sig[f.source] = static_cast<int>(f.loop.size());
  } catch (const std::exception&) {
    sig.assign(sig.size(), -1);
  }
  return sig;
}

void locate_changes(const Polytope3D& poly, double a, const std::vector<int>& sa, double b,
                    const std::vector<int>& sb, double tol, std::vector<double>& out) {
  if (sa == sb) return;
  if (b - a <= tol) {
    out.push_back(0.5 * (a + b));
    return;
  }
  const double mid = 0.5 * (a + b);
  const auto sm = facet_signature(poly, mid);
  locate_changes(poly, a, sa, mid, sm, tol, out);
  locate_changes(poly, mid, sm, b, sb, tol, out);
}

std::vector<double> polytope_events(const Polytope3D& poly, double r, int m) {
  std::vector<double> events;
  const int grid = 8 * m;
  double prev_t = 0.0;
  auto prev = facet_signature(poly, 0.0);
  for (int j = 1; j < grid; ++j) {
    const double t = r * j / grid;
    auto cur = facet_signature(poly, t);
    locate_changes(poly, prev_t, prev, t, cur, 1e-12 * r, events);
    prev_t = t;
    prev = std::move(cur);
  }
  std::sort(events.begin(), events.end());
  std::vector<double> merged;
  for (double e : events) {
    if (e >= r * (1.0 - 1e-9)) continue;
    if (merged.empty() || e - merged.back() > 1e-9 * r) merged.push_back(e);
  }
  return merged;
}

double lagrange(const double* x, const double* y, double t) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a) {
    double l = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) l *= (t - x[b]) / (x[a] - x[b]);
    }
    s += l * y[a];
  }
  return s;
}

double lagrange_derivative(const double* x, const double* y, double t) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a) {
    double denom = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) denom *= x[a] - x[b];
    }
    double num = 0.0;
    for (int c = 0; c < 4; ++c) {
      if (c == a) continue;
      double p = 1.0;
      for (int b = 0; b < 4; ++b) {
        if (b != a && b != c) p *= t - x[b];
      }
      num += p;
    }
    s += num / denom * y[a];
  }
  return s;
}

}  // namespace

std::vector<double> polygon_events(const Polygon2D& polygon, double r) {
  std::vector<double> events;
  const double d = polygon.diameter();
  std::vector<Vec2> loop = polygon.vertices();
  double t0 = 0.0;
  while (loop.size() >= 3) {
    const std::size_t m = loop.size();
    // Each vertex moves along its bisector; an edge of length l shrinks at
    // rate tan(a_i/2) + tan(a_{i+1}/2), a being the turning angles.
    std::vector<double> half_tan(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 e1 = loop[i] - loop[(i + m - 1) % m];
      const Vec2 e2 = loop[(i + 1) % m] - loop[i];
      half_tan[i] = std::tan(0.5 * std::atan2(cross2(e1, e2), e1.dot(e2)));
    }
    double tau = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double rate = half_tan[i] + half_tan[(i + 1) % m];
      if (rate > 0.0) tau = std::min(tau, (loop[(i + 1) % m] - loop[i]).norm() / rate);
    }
    const double te = t0 + tau;
    if (!std::isfinite(te) || te >= r * (1.0 - 1e-9)) break;
    events.push_back(te);
    loop = detail::clean_loop(detail::clip_offset(polygon, te), d);
    t0 = te;
  }
  return events;
}

InnerParallelSweep::InnerParallelSweep(ConvexBody body, double inradius, std::vector<SweepSample> samples,
                                       std::vector<double> events)
    : body_(std::move(body)),
      n_(dimension(body_)),
      inradius_(inradius),
      samples_(std::move(samples)),
      events_(std::move(events)) {
  if (const auto* ball = std::get_if<Ball>(&body_)) ball_radius_ = ball->radius;
  const auto bp = breakpoints();
  std::size_t idx = 0;
  for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
    while (idx < samples_.size() && samples_[idx].t < bp[p]) ++idx;
    Piece piece{idx, idx};
    while (piece.last + 1 < samples_.size() && samples_[piece.last + 1].t <= bp[p + 1]) ++piece.last;
    if (!ball_radius_ && piece.last - piece.first < 3) {
      throw NumericalError("sweep: fewer than four samples between consecutive events");
    }
    pieces_.push_back(piece);
    idx = piece.last;
  }
}

std::vector<double> InnerParallelSweep::breakpoints() const {
  std::vector<double> bp{0.0};
  bp.insert(bp.end(), events_.begin(), events_.end());
  bp.push_back(inradius_);
  return bp;
}

const InnerParallelSweep::Piece& InnerParallelSweep::piece_for(double t) const {
  std::size_t p = 0;
  while (p + 1 < pieces_.size() && t >= samples_[pieces_[p].last].t) ++p;
  return pieces_[p];
}

template <bool Derivative>
double InnerParallelSweep::interpolate(int i, double t) const {
  const Piece& piece = piece_for(t);
  std::size_t j = piece.first;
  while (j + 1 < piece.last && samples_[j + 1].t <= t) ++j;
  std::size_t start = j > piece.first ? j - 1 : piece.first;
  start = std::min(start, piece.last - 3);
  double x[4], y[4];
  for (int a = 0; a < 4; ++a) {
    x[a] = samples_[start + a].t;
    y[a] = samples_[start + a].w[i];
  }
  return Derivative ? lagrange_derivative(x, y, t) : lagrange(x, y, t);
}

double InnerParallelSweep::quermass(int i, double t) const {
  if (i < 0 || i > n_) throw InputError("sweep: quermass index out of range");
  t = std::clamp(t, 0.0, inradius_);
  if (ball_radius_) return unit_ball_volume(n_) * std::pow(*ball_radius_ - t, n_ - i);
  if (i == n_) return unit_ball_volume(n_);
  return interpolate<false>(i, t);
}

double InnerParallelSweep::quermass_derivative(int i, double t) const {
  if (i < 0 || i > n_) throw InputError("sweep: quermass index out of range");
  t = std::clamp(t, 0.0, inradius_);
  if (ball_radius_) {
    if (i == n_) return 0.0;
    return -(n_ - i) * unit_ball_volume(n_) * std::pow(*ball_radius_ - t, n_ - i - 1);
  }
  if (i == n_) return 0.0;
  return interpolate<true>(i, t);
}

InnerParallelSweep sweep(const ConvexBody& body, int m) {
  if (m < 16) throw InputError("sweep: sample count must be at least 16");
  const double r = inradius(body);
  std::vector<double> events;
  if (const auto* poly = std::get_if<Polygon2D>(&body)) {
    events = polygon_events(*poly, r);
  } else if (const auto* poly3 = std::get_if<Polytope3D>(&body)) {
    events = polytope_events(*poly3, r, m);
  }

  // Chebyshev-spaced base grid, merged with the events.
  std::vector<double> grid;
  for (int j = 0; j < m; ++j) {
    grid.push_back(0.5 * r * (1.0 - std::cos(std::numbers::pi * j / (m - 1))));
  }
  grid.front() = 0.0;
  grid.back() = r;
  std::vector<double> bp{0.0};
  bp.insert(bp.end(), events.begin(), events.end());
  bp.push_back(r);
  std::vector<double> ts;
  for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
    const double a = bp[p], b = bp[p + 1];
    std::vector<double> inside;
    for (double g : grid) {
      if (g > a + 1e-9 * r && g < b - 1e-9 * r) inside.push_back(g);
    }
    if (inside.size() < 4) {
      inside.clear();
      for (int q = 1; q <= 4; ++q) inside.push_back(a + (b - a) * q / 5.0);
    }
    ts.push_back(a);
    ts.insert(ts.end(), inside.begin(), inside.end());
  }
  ts.push_back(r);

  std::vector<SweepSample> samples;
  samples.reserve(ts.size());
  const int n = dimension(body);
  for (std::size_t s = 0; s < ts.size(); ++s) {
    const double t = ts[s];
    const bool is_event = std::binary_search(events.begin(), events.end(), t);
    if (const auto* poly = std::get_if<Polygon2D>(&body)) {
      samples.push_back({t, polygon_quermass_at(*poly, t), is_event});
    } else if (const auto* poly3 = std::get_if<Polytope3D>(&body)) {
      if (s + 1 == ts.size()) {
        samples.push_back({t, QuermassVector(), false});
      } else {
        samples.push_back({t, polytope_quermass_at(*poly3, t, r), is_event});
      }
    } else {
      const auto& ball = std::get<Ball>(body);
      samples.push_back({t, quermass(t < r ? ConvexBody(Ball(n, ball.radius - t)) : ConvexBody(ball)), false});
      if (t >= r) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 1);
        w(n) = unit_ball_volume(n);
        samples.back().w = QuermassVector(n, w);
      }
    }
  }
  // Omega_{r} is lower dimensional: extend the last polynomial piece.
  if (!std::holds_alternative<Ball>(body)) {
    const std::size_t last = samples.size() - 1;
    Eigen::VectorXd w(n + 1);
    for (int i = 0; i <= n; ++i) {
      double x[4], y[4];
      for (int a = 0; a < 4; ++a) {
        x[a] = samples[last - 4 + a].t;
        y[a] = samples[last - 4 + a].w[i];
      }
      w(i) = lagrange(x, y, r);
    }
    w(0) = std::max(0.0, w(0));
    w(n) = unit_ball_volume(n);
    samples.back().w = QuermassVector(n, w);
  }
  return InnerParallelSweep(body, r, std::move(samples), std::move(events));
}

}  // namespace hessbound
