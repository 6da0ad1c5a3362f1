#include "gammac/carlitz.hpp"

#include <sstream>

namespace gammac {

namespace {

void check_coefficients(const Tower& tw, const CarlitzPoly::Poly& p) {
  for (const auto& c : p.coeffs()) {
    if (!tw.contains(c)) throw TowerMismatch();
    if (!tw.is_tau_fixed(c))
      throw InvalidArgument("coefficient " + tw.format(c) + " of a polynomial in t is not tau-fixed");
  }
}

bool has_rational_coefficients(const CarlitzPoly& p) {
  for (const auto& c : p.poly().coeffs())
    if (!c.is_scalar() || !c.scalar().is_rational()) return false;
  return true;
}

QPoly to_qpoly(const CarlitzPoly& p) {
  return map_coeffs<mpq_class>(p.poly(), [](const TowerElement& c) { return c.scalar().rational(); });
}

}  // namespace

CarlitzPoly::CarlitzPoly(TowerHandle tower) : tower_(std::move(tower)) {
  if (!tower_) throw InvalidArgument("polynomial without a tower");
}

CarlitzPoly::CarlitzPoly(TowerHandle tower, Poly poly) : tower_(std::move(tower)), poly_(std::move(poly)) {
  if (!tower_) throw InvalidArgument("polynomial without a tower");
  check_coefficients(*tower_, poly_);
}

CarlitzPoly::CarlitzPoly(TowerHandle tower, TowerElement constant)
    : CarlitzPoly(std::move(tower), Poly(std::move(constant))) {}

CarlitzPoly CarlitzPoly::t(TowerHandle tower) { return CarlitzPoly(std::move(tower), Poly::x()); }

CarlitzPoly operator+(const CarlitzPoly& a, const CarlitzPoly& b) {
  if (a.tower_ != b.tower_) throw TowerMismatch();
  CarlitzPoly r(a.tower_);
  r.poly_ = a.poly_ + b.poly_;
  return r;
}

CarlitzPoly operator-(const CarlitzPoly& a, const CarlitzPoly& b) {
  if (a.tower_ != b.tower_) throw TowerMismatch();
  CarlitzPoly r(a.tower_);
  r.poly_ = a.poly_ - b.poly_;
  return r;
}

CarlitzPoly operator*(const CarlitzPoly& a, const CarlitzPoly& b) {
  if (a.tower_ != b.tower_) throw TowerMismatch();
  CarlitzPoly r(a.tower_);
  r.poly_ = a.poly_ * b.poly_;
  return r;
}

CarlitzPoly operator*(const TowerElement& s, const CarlitzPoly& a) {
  return CarlitzPoly(a.tower_, s * a.poly_);
}

CarlitzPoly pow(const CarlitzPoly& a, unsigned e) {
  CarlitzPoly r(a.tower(), TowerElement(1));
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

std::string CarlitzPoly::to_string(bool compact) const {
  std::vector<std::pair<TowerElement, std::string>> terms;
  for (int i = poly_.degree(); i >= 0; --i) {
    std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    terms.emplace_back(poly_.coeffs()[static_cast<std::size_t>(i)], std::move(mono));
  }
  const auto* tw = tower_.get();
  return format_sum(terms, [tw](const TowerElement& e, bool c) { return tw->format(e, c); }, compact);
}

SkewOperator expand(const CarlitzPoly& a) {
  const auto& tw = a.tower();
  const SkewOperator ct(tw, std::vector<TowerElement>{tw->nu(), TowerElement(-1)});
  SkewOperator acc(tw);
  for (int i = a.degree(); i >= 0; --i)
    acc = skew_mul(acc, ct) + SkewOperator(tw, a.poly().coeffs()[static_cast<std::size_t>(i)]);
  return acc;
}

TowerElement gamma_map(const CarlitzPoly& a) { return evaluate(a.poly(), a.tower()->nu()); }

CarlitzPoly shift_A(const CarlitzPoly& a, long steps) {
  return CarlitzPoly(a.tower(), taylor_shift(a.poly(), TowerElement(steps)));
}

CarlitzPoly derive_A(const CarlitzPoly& a) {
  std::vector<TowerElement> c;
  c.reserve(a.poly().size());
  for (const auto& x : a.poly().coeffs()) c.push_back(a.tower()->derive(x));
  return CarlitzPoly(a.tower(), CarlitzPoly::Poly(std::move(c)) + derivative(a.poly()));
}

std::optional<long> detect_shift(const CarlitzPoly& p, const CarlitzPoly& q) {
  if (p.tower() != q.tower()) throw TowerMismatch();
  if (!p.is_monic() || !q.is_monic()) throw InvalidArgument("detect_shift expects monic polynomials");
  const int n = p.degree();
  if (n != q.degree() || n < 1) return std::nullopt;
  // p(t + h) has t^{n-1} coefficient p_{n-1} + n h.
  const auto k = static_cast<std::size_t>(n - 1);
  const TowerElement h = (q.coeff(k) - p.coeff(k)) / TowerElement(n);
  if (!h.is_scalar() || !h.scalar().is_rational()) return std::nullopt;
  const mpq_class hq = h.scalar().rational();
  if (hq.get_den() != 1 || !hq.get_num().fits_slong_p()) return std::nullopt;
  const long hv = hq.get_num().get_si();
  if (shift_A(p, hv) != q) return std::nullopt;
  return hv;
}

FactoredPoly::FactoredPoly(TowerHandle tower, TowerElement unit, std::vector<Factor> factors)
    : tower_(std::move(tower)), unit_(std::move(unit)), factors_(std::move(factors)) {
  if (unit_.is_zero()) throw InvalidArgument("factorization with zero unit");
  if (!tower_->is_tau_fixed(unit_)) throw InvalidArgument("unit of a factorization must lie in k");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.poly.tower() != tower_) throw TowerMismatch();
    if (f.exponent == 0) throw InvalidArgument("factor exponents must be positive");
    if (f.poly.degree() < 1 || !f.poly.is_monic()) throw InvalidArgument("factors must be monic and non-constant");
    for (std::size_t j = 0; j < i; ++j)
      if (factors_[j].poly == f.poly) throw InvalidArgument("repeated factor " + f.poly.to_string());
    if (has_rational_coefficients(f.poly) && !is_irreducible_over_q(to_qpoly(f.poly)))
      throw InvalidArgument("factor " + f.poly.to_string() + " is reducible over Q");
  }
}

CarlitzPoly FactoredPoly::product() const {
  CarlitzPoly r(tower_, unit_);
  for (const auto& f : factors_) r = r * pow(f.poly, f.exponent);
  return r;
}

std::string FactoredPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (unit_ != TowerElement(1) || factors_.empty()) {
    os << "(" << tower_->format(unit_, true) << ")";
    first = false;
  }
  for (const auto& f : factors_) {
    if (!first) os << " * ";
    os << "(" << f.poly.to_string(true) << ")^" << f.exponent;
    first = false;
  }
  return os.str();
}

FactoredPoly hat_reduce(const FactoredPoly& f) {
  struct Member {
    std::size_t index;
    long offset;  // factor = shift_A^offset(anchor)
  };
  std::vector<std::vector<Member>> orbits;
  const auto& fs = f.factors();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    bool placed = false;
    for (auto& orbit : orbits) {
      const auto& anchor = fs[orbit.front().index].poly;
      if (auto h = detect_shift(anchor, fs[i].poly)) {
        orbit.push_back({i, *h});
        placed = true;
        break;
      }
    }
    if (!placed) orbits.push_back({{i, 0}});
  }
  std::vector<Factor> out;
  for (const auto& orbit : orbits) {
    unsigned best_exp = 0;
    for (const auto& m : orbit) best_exp = std::max(best_exp, fs[m.index].exponent);
    const Member* pick = nullptr;
    for (const auto& m : orbit) {
      if (fs[m.index].exponent != best_exp) continue;
      if (!pick || m.offset < pick->offset) pick = &m;
    }
    out.push_back(fs[pick->index]);
  }
  return FactoredPoly(f.tower(), TowerElement(1), std::move(out));
}

CompanionSystem companion(const CarlitzPoly& a) {
  const SkewOperator op = expand(a);
  if (op.is_zero() || *op.degree() == 0) throw InvalidArgument("companion system needs an operator of order >= 1");
  const auto n = static_cast<Eigen::Index>(*op.degree());
  const TowerElement& pn = op.leading();
  const TowerElement p0 = op.coefficient(0);
  if (p0.is_zero()) throw InvalidArgument("companion system needs a nonzero constant coefficient");
  CompanionSystem sys;
  sys.matrix = exact_zero<TowerElement>(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) sys.matrix(i, i + 1) = TowerElement(1);
  for (Eigen::Index j = 0; j < n; ++j) sys.matrix(n - 1, j) = -(op.coefficient(static_cast<std::size_t>(j)) / pn);
  sys.twist_sign = (n % 2 == 0) ? 1 : -1;
  sys.twist_ratio = p0 / pn;
  return sys;
}

IdentityReport identity_report(const CarlitzPoly& a, const SkewOperator& claimed, const CarlitzPoly& b,
                               const std::vector<TowerElement>& samples) {
  const auto& tw = a.tower();
  IdentityReport rep;
  rep.morphism = expand(a * b) == skew_mul(claimed, expand(b));

  const SkewOperator tau = SkewOperator::tau(tw);
  const SkewOperator c_shift = expand(shift_A(a));
  rep.shift_identity_operator = skew_mul(tau, claimed) == skew_mul(c_shift, tau);

  const SkewOperator c_derived = expand(derive_A(a));
  rep.derive_identity_operator = derive_coefficients(claimed) == c_derived;

  for (const auto& x : samples) {
    const TowerElement cx = apply_to_element(claimed, x);
    if (tw->shift(cx, 1) != apply_to_element(c_shift, tw->shift(x, 1))) rep.shift_identity_samples = false;
    const TowerElement lhs = tw->derive(cx) - apply_to_element(claimed, tw->derive(x));
    if (lhs != apply_to_element(c_derived, x)) rep.derive_identity_samples = false;
  }
  return rep;
}

IdentityReport identity_report(const CarlitzPoly& a, const CarlitzPoly& b,
                               const std::vector<TowerElement>& samples) {
  return identity_report(a, expand(a), b, samples);
}

}  // namespace gammac
