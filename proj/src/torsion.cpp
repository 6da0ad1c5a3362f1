#include "gammac/torsion.hpp"

namespace gammac {

namespace {

void check_modulus(const CarlitzPoly& m) {
  if (m.degree() < 1) throw InvalidArgument("torsion modulus must have degree >= 1");
  if (!m.is_monic()) throw InvalidArgument("torsion modulus must be monic");
}

void check_same_modulus(const TorsionResidue& a, const TorsionResidue& b) {
  if (a.modulus() != b.modulus()) throw InvalidArgument("residues have different moduli");
}

CarlitzPoly reduce(const CarlitzPoly& v, const CarlitzPoly& m) {
  return CarlitzPoly(m.tower(), divmod(v.poly(), m.poly()).remainder);
}

}  // namespace

TorsionResidue::TorsionResidue(const CarlitzPoly& value, const CarlitzPoly& modulus)
    : value_(value.tower()), modulus_(modulus) {
  if (value.tower() != modulus.tower()) throw TowerMismatch();
  check_modulus(modulus_);
  value_ = reduce(value, modulus_);
}

TorsionResidue operator+(const TorsionResidue& a, const TorsionResidue& b) {
  check_same_modulus(a, b);
  return TorsionResidue(a.value_ + b.value_, a.modulus_);
}

TorsionResidue operator-(const TorsionResidue& a, const TorsionResidue& b) {
  check_same_modulus(a, b);
  return TorsionResidue(a.value_ - b.value_, a.modulus_);
}

TorsionResidue operator*(const TorsionResidue& a, const TorsionResidue& b) {
  check_same_modulus(a, b);
  return TorsionResidue(a.value_ * b.value_, a.modulus_);
}

TorsionResidue normalize(const CarlitzPoly& b, const CarlitzPoly& modulus) { return TorsionResidue(b, modulus); }

TorsionResidue act(const CarlitzPoly& b, const TorsionResidue& x) {
  return TorsionResidue(b * x.value(), x.modulus());
}

std::optional<TorsionResidue> inverse(const TorsionResidue& b) {
  if (b.is_zero()) return std::nullopt;
  const auto eg = xgcd(b.value().poly(), b.modulus().poly());
  if (eg.g.degree() != 0) return std::nullopt;
  return TorsionResidue(CarlitzPoly(b.modulus().tower(), eg.s), b.modulus());
}

bool is_generator(const TorsionResidue& x) {
  if (x.is_zero()) return false;
  return gcd(x.value().poly(), x.modulus().poly()).degree() == 0;
}

std::vector<TowerElement> coordinates(const TorsionResidue& x) {
  std::vector<TowerElement> c(static_cast<std::size_t>(x.dimension()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.value().coeff(i);
  return c;
}

bool spans_quotient(const TorsionResidue& x) {
  const Eigen::Index n = x.dimension();
  TowerMatrix m(n, n);
  const CarlitzPoly t = CarlitzPoly::t(x.modulus().tower());
  TorsionResidue v = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto coords = coordinates(v);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = coords[static_cast<std::size_t>(i)];
    v = act(t, v);
  }
  return exact_rank(m) == static_cast<std::size_t>(n);
}

CrtSplit::CrtSplit(const FactoredPoly& modulus) : modulus_(modulus.tower(), TowerElement(1)) {
  const auto& tw = modulus.tower();
  for (const auto& f : modulus.factors()) moduli_.push_back(pow(f.poly, f.exponent));
  if (moduli_.empty()) throw InvalidArgument("CRT split of a constant modulus");
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gcd(moduli_[i].poly(), moduli_[j].poly()).degree() > 0)
        throw InvalidArgument("CRT split needs pairwise coprime factors");
  for (const auto& m : moduli_) modulus_ = modulus_ * m;
  for (const auto& m : moduli_) {
    // e = s * (M / m) with s * (M / m) = 1 mod m.
    const CarlitzPoly cofactor(tw, exact_div(modulus_.poly(), m.poly()));
    const auto eg = xgcd(cofactor.poly(), m.poly());
    const CarlitzPoly e = CarlitzPoly(tw, eg.s) * cofactor;
    idempotents_.push_back(reduce(e, modulus_));
  }
}

std::vector<TorsionResidue> CrtSplit::split(const TorsionResidue& x) const {
  if (x.modulus() != modulus_) throw InvalidArgument("residue does not belong to the split modulus");
  std::vector<TorsionResidue> parts;
  for (const auto& m : moduli_) parts.emplace_back(x.value(), m);
  return parts;
}

TorsionResidue CrtSplit::recombine(const std::vector<TorsionResidue>& parts) const {
  if (parts.size() != moduli_.size()) throw InvalidArgument("wrong number of CRT components");
  CarlitzPoly acc(modulus_.tower());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].modulus() != moduli_[i]) throw InvalidArgument("CRT component has the wrong modulus");
    acc = acc + parts[i].value() * idempotents_[i];
  }
  return TorsionResidue(acc, modulus_);
}

TowerMatrix galois_matrix(const TorsionResidue& b) {
  if (!inverse(b)) throw InvalidArgument("Galois matrix of a non-unit");
  const Eigen::Index n = b.dimension();
  TowerMatrix m(n, n);
  const CarlitzPoly t = CarlitzPoly::t(b.modulus().tower());
  TorsionResidue col = b;
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto coords = coordinates(col);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = coords[static_cast<std::size_t>(i)];
    col = act(t, col);
  }
  return m;
}

}  // namespace gammac
