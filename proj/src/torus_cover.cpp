#include "pkflat/torus_cover.hpp"

#include <set>

namespace pkflat {

DiscretenessVerdict discreteness(std::span<const QN> gens) {
  DiscretenessVerdict out;
  const QN* base = nullptr;
  Rational step(0);
  for (const QN& g : gens) {
    if (g.is_zero()) continue;
    if (!base) {
      base = &g;
      step = Rational(1);
      continue;
    }
    const std::optional<Rational> ratio = rational_ratio(g, *base);
    if (!ratio) {
      out.discrete = false;
      out.witness = std::make_pair(g, *base);
      return out;
    }
    step = gcd(step, *ratio);
  }
  if (base) out.generator = (*base * QN(step)).abs();
  return out;
}

CoverVerdict decide_torus_cover(const ValidatedSurface& s) {
  const PeriodData periods = period_group(s);
  const std::vector<QN> hs = periods.horizontal();
  const std::vector<QN> vs = periods.vertical();
  const DiscretenessVerdict h = discreteness(hs);
  const DiscretenessVerdict v = discreteness(vs);
  for (auto [verdict, axis] : {std::pair{&h, Axis::Horizontal}, std::pair{&v, Axis::Vertical}}) {
    if (!verdict->discrete) return NotACover{axis, false, verdict->witness};
    if (verdict->trivial()) return NotACover{axis, true, std::nullopt};
  }

  const SurfaceInvariants inv = invariants(s);
  CoveringDescription cover;
  cover.lattice = {*h.generator, *v.generator};
  const QN degree = inv.area / cover.lattice.covolume();
  if (!degree.is_rational() || !degree.rational_part().is_integer() || degree.sign() <= 0)
    throw Error(ErrorKind::InternalInconsistency, "covering degree " + degree.str() + " is not a positive integer");
  cover.degree = degree.rational_part().numerator();

  int excess = 0;
  for (std::size_t c = 0; c < s.vertex_classes().size(); ++c) {
    const int local = s.vertex_classes()[c].cone_multiple;
    cover.ramification.push_back({c, local});
    excess += local - 1;
  }
  if (excess != 2 * inv.genus - 2)
    throw Error(ErrorKind::InternalInconsistency, "ramification violates Riemann-Hurwitz");

  cover.base_point = {0, QN(0), QN(0)};
  cover.placement = development(s, 0);
  return cover;
}

TorusPoint reduce(const Lattice& lattice, const QN& x, const QN& y) {
  const QN kx(Rational(floor(x / lattice.h)));
  const QN ky(Rational(floor(y / lattice.v)));
  return {x - kx * lattice.h, y - ky * lattice.v};
}

TorusPoint develop(const ValidatedSurface& s, const CoveringDescription& cover, const SurfacePoint& p) {
  s.check_point(p);
  const Vec2& corner = cover.placement.at(p.rect);
  return reduce(cover.lattice, corner.x + p.x, corner.y + p.y);
}

namespace {

// Values target + k*period (k in Z) that fall in [lo - offset, hi - offset].
std::vector<QN> translates_in(const QN& target, const QN& period, const QN& offset, const QN& length) {
  std::vector<QN> out;
  const QN first = offset - target;  // want target - offset + k*period >= 0
  mpz_class k = -floor(-first / period);
  for (;; ++k) {
    QN value = target - offset + QN(Rational(k)) * period;
    if (value > length) break;
    out.push_back(std::move(value));
  }
  return out;
}

}  // namespace

std::vector<PointKey> fiber(const ValidatedSurface& s, const CoveringDescription& cover, const TorusPoint& t) {
  std::set<PointKey> keys;
  for (std::size_t r = 0; r < s.rectangles().size(); ++r) {
    const Rectangle& rect = s.rectangle(r);
    const Vec2& corner = cover.placement[r];
    const std::vector<QN> xs = translates_in(t.x, cover.lattice.h, corner.x, rect.width);
    const std::vector<QN> ys = translates_in(t.y, cover.lattice.v, corner.y, rect.height);
    for (const QN& x : xs)
      for (const QN& y : ys) keys.insert(s.canonical({r, x, y}));
  }
  return {keys.begin(), keys.end()};
}

std::size_t fiber_count(const ValidatedSurface& s, const CoveringDescription& cover, const TorusPoint& t) {
  return fiber(s, cover, t).size();
}

}  // namespace pkflat
