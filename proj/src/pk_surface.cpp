#include "pkflat/pk_surface.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace pkflat {

ProductVerdict product_cover_decision(const ValidatedSurface& c1, const ValidatedSurface& c2) {
  const CoverVerdict v1 = decide_torus_cover(c1);
  const CoverVerdict v2 = decide_torus_cover(c2);
  ProductVerdict out;
  const CoverVerdict* factors[2] = {&v1, &v2};
  for (std::size_t i = 0; i < 2; ++i) {
    if (const auto* no = std::get_if<NotACover>(factors[i])) {
      out.failing_factor = i;
      out.failure = *no;
      return out;
    }
  }
  const auto& a = std::get<CoveringDescription>(v1);
  const auto& b = std::get<CoveringDescription>(v2);
  out.covers = true;
  out.lattices = std::make_pair(a.lattice, b.lattice);
  out.degree = a.degree * b.degree;
  return out;
}

// ------------------------------------------------------------- branch data

namespace {

QN det(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Coordinates of v in the basis (w1, w2).
std::pair<QN, QN> coords_in(const LatticeBasis& basis, const Vec2& v) {
  const QN d = det(basis.w1, basis.w2);
  return {det(v, basis.w2) / d, det(basis.w1, v) / d};
}

QN frac(const QN& x) { return x - QN(Rational(floor(x))); }

bool is_integer(const QN& x) { return x.is_rational() && x.rational_part().is_integer(); }

std::pair<QN, QN> offset_coords(const FlatTorus2& t, const BranchCurve& c) { return coords_in(t.first, c.offset); }

bool less(const TorusCoords& a, const TorusCoords& b) {
  for (auto [x, y] : {std::pair{&a.z1, &b.z1}, std::pair{&a.z2, &b.z2}, std::pair{&a.w1, &b.w1},
                      std::pair{&a.w2, &b.w2}}) {
    if (*x != *y) return *x < *y;
  }
  return false;
}

void check_curve(const BranchCurve& c, std::size_t i) {
  if (std::gcd(std::labs(c.p), std::labs(c.q)) != 1)
    throw Error(ErrorKind::NonPrimitiveDirection,
                "curve " + std::to_string(i) + " has direction (" + std::to_string(c.p) + ", " + std::to_string(c.q) + ")");
  if (c.order < 2) throw Error(ErrorKind::InvalidOrder, "curve " + std::to_string(i) + " has order " + std::to_string(c.order));
}

}  // namespace

FlatTorus2 square_torus2() {
  const LatticeBasis unit{{QN(1), QN(0)}, {QN(0), QN(1)}};
  return {unit, unit};
}

void check_torus(const FlatTorus2& t) {
  for (const LatticeBasis* b : {&t.first, &t.second}) {
    if (det(b->w1, b->w2).is_zero()) throw Error(ErrorKind::DegenerateLattice, "lattice generators are dependent");
  }
  // The second basis must be an integral unimodular change of the first.
  const auto [a, b] = coords_in(t.first, t.second.w1);
  const auto [c, d] = coords_in(t.first, t.second.w2);
  for (const QN* x : {&a, &b, &c, &d}) {
    if (!is_integer(*x)) throw Error(ErrorKind::UnsupportedTorus, "factor lattices differ");
  }
  const QN m = a * d - b * c;
  if (m != QN(1) && m != QN(-1)) throw Error(ErrorKind::UnsupportedTorus, "factor lattices differ");
}

std::string to_string(const TorusCoords& x) {
  return x.z1.str() + " " + x.z2.str() + " " + x.w1.str() + " " + x.w2.str();
}

bool on_curve(const FlatTorus2& t, const BranchCurve& c, const TorusCoords& x) {
  const auto [c1, c2] = offset_coords(t, c);
  return is_integer(QN(c.q) * x.z1 - QN(c.p) * x.w1 - c1) && is_integer(QN(c.q) * x.z2 - QN(c.p) * x.w2 - c2);
}

CurveRelation curve_relations(const BranchCurve& a, const BranchCurve& b, const FlatTorus2& t) {
  check_torus(t);
  CurveRelation out;
  const long d = a.p * b.q - a.q * b.p;
  if (d == 0) {
    out.parallel = true;
    return out;
  }
  // N (Z, W) = C (mod 1) with N = [[qa, -pa], [qb, -pb]], separately in
  // each real coordinate; N^-1 = [[-pb, pa], [-qb, qa]] / d.
  const auto [ca1, ca2] = offset_coords(t, a);
  const auto [cb1, cb2] = offset_coords(t, b);
  const QN dd(d);
  auto solve = [&](const QN& ca, const QN& cb) {
    std::vector<std::pair<QN, QN>> sols;
    const long n = std::labs(d);
    for (long k1 = 0; k1 < n; ++k1) {
      for (long k2 = 0; k2 < n; ++k2) {
        const QN r1 = ca + QN(k1), r2 = cb + QN(k2);
        sols.emplace_back(frac((QN(-b.p) * r1 + QN(a.p) * r2) / dd), frac((QN(-b.q) * r1 + QN(a.q) * r2) / dd));
      }
    }
    std::sort(sols.begin(), sols.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first < y.first : x.second < y.second;
    });
    sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
    return sols;
  };
  const auto first = solve(ca1, cb1);
  const auto second = solve(ca2, cb2);
  for (const auto& [z1, w1] : first)
    for (const auto& [z2, w2] : second) out.intersections.push_back({z1, z2, w1, w2});
  std::sort(out.intersections.begin(), out.intersections.end(), less);
  return out;
}

TripleIntersectionError::TripleIntersectionError(std::array<std::size_t, 3> curves, TorusCoords point)
    : Error(ErrorKind::TripleIntersection, "curves " + std::to_string(curves[0]) + ", " + std::to_string(curves[1]) +
                                               ", " + std::to_string(curves[2]) + " meet at " + to_string(point)),
      curves_(curves),
      point_(std::move(point)) {}

BranchConfig validate_branch_config(const FlatTorus2& t, std::vector<BranchCurve> curves) {
  check_torus(t);
  for (std::size_t i = 0; i < curves.size(); ++i) check_curve(curves[i], i);
  BranchConfig out{t, std::move(curves), {}};
  const auto& cs = out.curves;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      CurveRelation rel = curve_relations(cs[i], cs[j], t);
      if (rel.parallel) {
        const long sign = (cs[i].p == cs[j].p && cs[i].q == cs[j].q) ? 1 : -1;
        const auto [a1, a2] = offset_coords(t, cs[i]);
        const auto [b1, b2] = offset_coords(t, cs[j]);
        if (is_integer(b1 - QN(sign) * a1) && is_integer(b2 - QN(sign) * a2))
          throw Error(ErrorKind::ParallelCoincident,
                      "curves " + std::to_string(i) + " and " + std::to_string(j) + " are the same curve");
      }
      out.pairwise.push_back(std::move(rel.intersections));
    }
  }
  std::size_t pair = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j, ++pair) {
      for (const TorusCoords& x : out.pairwise[pair]) {
        for (std::size_t k = j + 1; k < cs.size(); ++k) {
          if (on_curve(t, cs[k], x)) throw TripleIntersectionError({i, j, k}, x);
        }
      }
    }
  }
  return out;
}

DirectionCensus direction_census(std::span<const BranchCurve> curves) {
  DirectionCensus out;
  for (const BranchCurve& c : curves) {
    const bool seen = std::any_of(out.directions.begin(), out.directions.end(),
                                  [&](const ProjectiveDirection& d) { return d.p * c.q - d.q * c.p == 0; });
    if (seen) continue;
    const bool flip = c.p < 0 || (c.p == 0 && c.q < 0);
    out.directions.push_back(flip ? ProjectiveDirection{-c.p, -c.q} : ProjectiveDirection{c.p, c.q});
  }
  return out;
}

DirectionCensus direction_census(const BranchConfig& config) { return direction_census(config.curves); }

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::ProductOfCurves: return "ProductOfCurves";
    case Classification::NotProduct: return "NotProduct";
    case Classification::Unknown: return "Unknown";
  }
  return "?";
}

ClassifyResult classify(const BranchConfig& config) {
  ClassifyResult out;
  out.census = direction_census(config);
  const std::size_t n = out.census.directions.size();
  if (n <= 2) {
    out.verdict = Classification::ProductOfCurves;
    out.rule = "at-most-two-directions-product";
  } else if (n == 3 && config.curves.size() == 3) {
    out.verdict = Classification::NotProduct;
    out.rule = "three-lines-nonsplit";
  } else {
    out.verdict = Classification::Unknown;
    out.rule = "no-criterion-applies";
  }
  return out;
}

// ------------------------------------------------------------ local models

std::string_view to_string(CubeFace f) {
  switch (f) {
    case CubeFace::Z1Low: return "z1-low";
    case CubeFace::Z1High: return "z1-high";
    case CubeFace::Z2Low: return "z2-low";
    case CubeFace::Z2High: return "z2-high";
  }
  return "?";
}

std::size_t LocalModel::index(long k, long l) const {
  const long km = ((k % (2 * m)) + 2 * m) % (2 * m);
  const long lm = ((l % (2 * n)) + 2 * n) % (2 * n);
  return static_cast<std::size_t>(km * 2 * n + lm);
}

LocalModel local_model(long m, long n) {
  if (m < 1 || n < 1)
    throw Error(ErrorKind::InvalidOrder, "local model needs m, n >= 1, got " + std::to_string(m) + ", " + std::to_string(n));
  LocalModel out;
  out.m = m;
  out.n = n;
  for (long k = 0; k < 2 * m; ++k) {
    for (long l = 0; l < 2 * n; ++l) {
      out.cubes.push_back({k, l});
    }
  }
  for (long k = 0; k < 2 * m; ++k) {
    for (long l = 0; l < 2 * n; ++l) {
      out.schedule.push_back({out.index(k, l), CubeFace::Z1High, out.index(k + 1, l), CubeFace::Z1Low});
      out.schedule.push_back({out.index(k, l), CubeFace::Z2High, out.index(k, l + 1), CubeFace::Z2Low});
    }
  }
  return out;
}

LocalModelAudit audit(const LocalModel& model) {
  LocalModelAudit out;
  const std::size_t n = model.cubes.size();
  out.cube_count = n;

  std::map<std::pair<std::size_t, CubeFace>, int> uses;
  std::vector<std::optional<std::size_t>> step1(n), step2(n);
  bool well_formed = true;
  for (const CubeGluing& g : model.schedule) {
    if (g.a >= n || g.b >= n) {
      well_formed = false;
      continue;
    }
    ++uses[{g.a, g.face_a}];
    ++uses[{g.b, g.face_b}];
    if (g.face_a == CubeFace::Z1High && g.face_b == CubeFace::Z1Low) step1[g.a] = g.b;
    if (g.face_a == CubeFace::Z2High && g.face_b == CubeFace::Z2Low) step2[g.a] = g.b;
  }
  out.faces_glued_once = well_formed && uses.size() == 4 * n &&
                         std::all_of(uses.begin(), uses.end(), [](const auto& u) { return u.second == 1; });

  auto closes = [&](const std::vector<std::optional<std::size_t>>& step, long turns, long& angle) {
    if (n == 0) return false;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t at = c;
      for (long i = 0; i < turns; ++i) {
        if (!step[at]) return false;
        at = *step[at];
        if (c == 0 && at == 0 && angle == 0) angle = (i + 1) / 2;  // each cube spans a half turn
      }
      if (at != c) return false;
    }
    return true;
  };
  out.z1_cycle_closes = closes(step1, 2 * model.m, out.angle_z1);
  out.z2_cycle_closes = closes(step2, 2 * model.n, out.angle_z2);
  return out;
}

// ----------------------------------------------------------------- isogeny

std::string to_string(const LinearForm& f) {
  std::string out;
  auto term = [&](long c, const char* var) {
    if (c == 0) return;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (std::labs(c) != 1) out += std::to_string(std::labs(c)) + "*";
    out += var;
  };
  term(f.coef_z, "z");
  term(f.coef_w, "w");
  return out.empty() ? "0" : out;
}

std::variant<IsogenySplit, ParallelCurves> isogeny_split(const FlatTorus2& t, const BranchCurve& a,
                                                         const BranchCurve& b) {
  check_torus(t);
  const long d = a.p * b.q - a.q * b.p;
  if (d == 0) return ParallelCurves{};
  auto form = [](const BranchCurve& c) {
    LinearForm f{c.q, -c.p};
    if (f.coef_z < 0 || (f.coef_z == 0 && f.coef_w < 0)) f = {-f.coef_z, -f.coef_w};
    return f;
  };
  return IsogenySplit{form(a), form(b), mpz_class(d) * mpz_class(d)};
}

}  // namespace pkflat
