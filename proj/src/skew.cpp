#include "gammac/skew.hpp"

namespace gammac {

namespace {

void check_same_tower(const SkewOperator& a, const SkewOperator& b) {
  if (a.tower() != b.tower()) throw TowerMismatch();
}

}  // namespace

SkewOperator::SkewOperator(TowerHandle tower) : tower_(std::move(tower)) {
  if (!tower_) throw InvalidArgument("operator without a tower");
}

SkewOperator::SkewOperator(TowerHandle tower, std::vector<TowerElement> coefficients)
    : tower_(std::move(tower)), coeffs_(std::move(coefficients)) {
  if (!tower_) throw InvalidArgument("operator without a tower");
  trim();
}

SkewOperator::SkewOperator(TowerHandle tower, TowerElement constant)
    : SkewOperator(std::move(tower), std::vector<TowerElement>{std::move(constant)}) {}

SkewOperator SkewOperator::tau(TowerHandle tower, std::size_t k) {
  std::vector<TowerElement> c(k + 1);
  c[k] = TowerElement(1);
  return SkewOperator(std::move(tower), std::move(c));
}

void SkewOperator::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const TowerElement& SkewOperator::leading() const {
  if (coeffs_.empty()) throw InvalidArgument("leading coefficient of the zero operator");
  return coeffs_.back();
}

SkewOperator operator+(const SkewOperator& a, const SkewOperator& b) {
  check_same_tower(a, b);
  std::vector<TowerElement> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coefficient(i) + b.coefficient(i);
  return SkewOperator(a.tower_, std::move(r));
}

SkewOperator operator-(const SkewOperator& a) {
  std::vector<TowerElement> r;
  r.reserve(a.coeffs_.size());
  for (const auto& c : a.coeffs_) r.push_back(-c);
  return SkewOperator(a.tower_, std::move(r));
}

SkewOperator operator-(const SkewOperator& a, const SkewOperator& b) { return a + (-b); }

SkewOperator operator*(const SkewOperator& a, const SkewOperator& b) { return skew_mul(a, b); }

SkewOperator operator*(const TowerElement& f, const SkewOperator& a) {
  std::vector<TowerElement> r;
  r.reserve(a.coeffs_.size());
  for (const auto& c : a.coeffs_) r.push_back(f * c);
  return SkewOperator(a.tower_, std::move(r));
}

bool operator==(const SkewOperator& a, const SkewOperator& b) {
  return a.tower_ == b.tower_ && a.coeffs_ == b.coeffs_;
}

SkewOperator skew_mul(const SkewOperator& a, const SkewOperator& b) {
  check_same_tower(a, b);
  if (a.is_zero() || b.is_zero()) return SkewOperator(a.tower());
  const auto& tw = *a.tower();
  const auto& ac = a.coefficients();
  const auto& bc = b.coefficients();
  std::vector<TowerElement> r(ac.size() + bc.size() - 1);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) {
      if (bc[j].is_zero()) continue;
      r[i + j] += ac[i] * tw.shift(bc[j], static_cast<long>(i));
    }
  }
  return SkewOperator(a.tower(), std::move(r));
}

SkewDivMod right_divmod(const SkewOperator& a, const SkewOperator& b) {
  check_same_tower(a, b);
  if (b.is_zero()) throw DivisionByZero("division by the zero operator");
  const auto& tw = *a.tower();
  const std::size_t n = *b.degree();
  SkewOperator q(a.tower()), r = a;
  while (!r.is_zero() && *r.degree() >= n) {
    const std::size_t k = *r.degree() - n;
    // (f tau^k)(b_n tau^n) = f tau^k(b_n) tau^(n+k)
    const TowerElement f = r.leading() / tw.shift(b.leading(), static_cast<long>(k));
    std::vector<TowerElement> term(k + 1);
    term[k] = f;
    const SkewOperator t(a.tower(), std::move(term));
    q = q + t;
    r = r - skew_mul(t, b);
  }
  return {q, r};
}

SkewDivMod left_divmod(const SkewOperator& a, const SkewOperator& b) {
  check_same_tower(a, b);
  if (b.is_zero()) throw DivisionByZero("division by the zero operator");
  const auto& tw = *a.tower();
  const std::size_t n = *b.degree();
  SkewOperator q(a.tower()), r = a;
  while (!r.is_zero() && *r.degree() >= n) {
    const std::size_t k = *r.degree() - n;
    // (b_n tau^n)(f tau^k) = b_n tau^n(f) tau^(n+k)
    const TowerElement f = tw.shift(r.leading() / b.leading(), -static_cast<long>(n));
    std::vector<TowerElement> term(k + 1);
    term[k] = f;
    const SkewOperator t(a.tower(), std::move(term));
    q = q + t;
    r = r - skew_mul(b, t);
  }
  return {q, r};
}

TowerElement apply_to_element(const SkewOperator& op, const TowerElement& x) {
  const auto& tw = *op.tower();
  TowerElement acc;
  const auto& c = op.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    acc += c[i] * tw.shift(x, static_cast<long>(i));
  }
  return acc;
}

SkewOperator derive_coefficients(const SkewOperator& op) {
  std::vector<TowerElement> r;
  r.reserve(op.coefficients().size());
  for (const auto& c : op.coefficients()) r.push_back(op.tower()->derive(c));
  return SkewOperator(op.tower(), std::move(r));
}

SkewOperator shift_coefficients(const SkewOperator& op, long steps) {
  std::vector<TowerElement> r;
  r.reserve(op.coefficients().size());
  for (const auto& c : op.coefficients()) r.push_back(op.tower()->shift(c, steps));
  return SkewOperator(op.tower(), std::move(r));
}

std::string SkewOperator::to_string(bool compact) const {
  std::vector<std::pair<TowerElement, std::string>> terms;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    std::string mono = i == 0 ? "" : (i == 1 ? "tau" : "tau^" + std::to_string(i));
    terms.emplace_back(coeffs_[i], std::move(mono));
  }
  const auto* tw = tower_.get();
  return format_sum(terms, [tw](const TowerElement& e, bool c) { return tw->format(e, c); }, compact);
}

CasoratianReport casoratian(const TowerHandle& tower, const std::vector<TowerElement>& xs) {
  if (xs.empty()) throw InvalidArgument("casoratian of an empty family");
  const auto s = static_cast<Eigen::Index>(xs.size());
  CasoratianReport rep;
  rep.matrix = TowerMatrix(s, s);
  for (Eigen::Index j = 0; j < s; ++j) {
    TowerElement v = xs[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < s; ++i) {
      rep.matrix(i, j) = v;
      if (i + 1 < s) v = tower->shift(v, 1);
    }
  }
  rep.determinant = exact_determinant(rep.matrix);
  rep.full_rank = !rep.determinant.is_zero();
  return rep;
}

}  // namespace gammac
