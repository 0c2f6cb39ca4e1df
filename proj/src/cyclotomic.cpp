#include "picentlab/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "picentlab/error.hpp"
#include "picentlab/numtheory.hpp"

namespace picent {
namespace {

using IntPoly = std::vector<std::int64_t>;

IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const std::int64_t coef = num[i];  // den is monic
    quot[i - dd] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= coef * den[j];
  }
  return quot;
}

struct Tables {
  std::size_t phi = 1;
  // power[k] = zeta^k reduced, for 0 <= k < m.
  std::vector<IntPoly> power;
};

std::mutex cache_mutex;
std::map<std::uint64_t, IntPoly> poly_cache;
std::map<std::uint64_t, std::shared_ptr<const Tables>> table_cache;

IntPoly cyclotomic_locked(std::uint64_t m) {
  if (auto it = poly_cache.find(m); it != poly_cache.end()) return it->second;
  IntPoly num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (std::uint64_t d = 1; d < m; ++d) {
    if (m % d == 0) num = exact_divide(std::move(num), cyclotomic_locked(d));
  }
  poly_cache.emplace(m, num);
  return num;
}

std::shared_ptr<const Tables> tables(std::uint64_t m) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (auto it = table_cache.find(m); it != table_cache.end()) return it->second;
  const IntPoly phi_m = cyclotomic_locked(m);
  auto t = std::make_shared<Tables>();
  t->phi = phi_m.size() - 1;
  IntPoly cur(t->phi, 0);
  cur[0] = 1;
  for (std::uint64_t k = 0; k < m; ++k) {
    t->power.push_back(cur);
    // cur *= x, then reduce the overflowing top coefficient.
    IntPoly next(t->phi, 0);
    const std::int64_t top = cur[t->phi - 1];
    for (std::size_t i = t->phi - 1; i > 0; --i) next[i] = cur[i - 1];
    next[0] = 0;
    for (std::size_t i = 0; i < t->phi; ++i) next[i] -= top * phi_m[i];
    cur = std::move(next);
  }
  table_cache.emplace(m, t);
  return t;
}

// Reduces sum_k acc[k] zeta_m^k.
std::vector<Rational> reduce(std::uint64_t m, const std::vector<Rational>& acc) {
  const auto t = tables(m);
  std::vector<Rational> out(t->phi, 0);
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (sgn(acc[k]) == 0) continue;
    const auto& pk = t->power[k % m];
    for (std::size_t i = 0; i < t->phi; ++i) {
      if (pk[i] != 0) out[i] += acc[k] * static_cast<long>(pk[i]);
    }
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::BadParameters, "conductor must be positive");
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cyclotomic_locked(m);
}

Cyclotomic::Cyclotomic(std::uint64_t conductor) : m_(conductor) {
  if (m_ == 0) throw Error(ErrorCode::BadParameters, "conductor must be positive");
  c_.assign(tables(m_)->phi, 0);
}

Cyclotomic Cyclotomic::rational(const Rational& r, std::uint64_t conductor) {
  Cyclotomic out(conductor);
  out.c_[0] = r;
  return out;
}

Cyclotomic Cyclotomic::root(std::uint64_t m, std::int64_t k) {
  const auto mm = static_cast<std::int64_t>(m);
  std::vector<Rational> acc(m, 0);
  acc[static_cast<std::size_t>(((k % mm) + mm) % mm)] = 1;
  Cyclotomic out(m);
  out.c_ = reduce(m, acc);
  return out;
}

Cyclotomic Cyclotomic::from_power_sum(std::uint64_t m, const std::vector<Rational>& c) {
  Cyclotomic out(m);
  out.c_ = reduce(m, c);
  return out;
}

Cyclotomic Cyclotomic::embed(std::uint64_t multiple) const {
  if (multiple == m_) return *this;
  if (multiple % m_ != 0) {
    throw Error(ErrorCode::BadParameters, "cannot embed conductor " + std::to_string(m_) +
                                              " into " + std::to_string(multiple));
  }
  const std::uint64_t step = multiple / m_;
  std::vector<Rational> acc(multiple, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) acc[i * step] = c_[i];
  Cyclotomic out(multiple);
  out.c_ = reduce(multiple, acc);
  return out;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  Cyclotomic out = *this;
  out += o;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.m_ == m_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  const std::uint64_t l = nt::lcm(m_, o.m_);
  *this = embed(l);
  const Cyclotomic other = o.embed(l);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  const std::uint64_t l = nt::lcm(m_, o.m_);
  const Cyclotomic a = embed(l);
  const Cyclotomic b = o.embed(l);
  std::vector<Rational> acc(l, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      acc[(i + j) % l] += a.c_[i] * b.c_[j];
    }
  }
  Cyclotomic out(l);
  out.c_ = reduce(l, acc);
  return out;
}

Cyclotomic Cyclotomic::operator*(const Rational& r) const {
  Cyclotomic out = *this;
  for (auto& x : out.c_) x *= r;
  return out;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (m_ == o.m_) return c_ == o.c_;
  const std::uint64_t l = nt::lcm(m_, o.m_);
  return embed(l).c_ == o.embed(l).c_;
}

bool Cyclotomic::less(const Cyclotomic& o) const {
  if (m_ != o.m_) return m_ < o.m_;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

Cyclotomic Cyclotomic::galois(std::int64_t a) const {
  const auto m = static_cast<std::int64_t>(m_);
  const auto aa = static_cast<std::uint64_t>(((a % m) + m) % m);
  if (nt::gcd(aa, m_) != 1) {
    throw Error(ErrorCode::IncompatibleGalois, "gcd(" + std::to_string(a) + ", " +
                                                   std::to_string(m_) + ") != 1");
  }
  std::vector<Rational> acc(m_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) acc[(i * aa) % m_] += c_[i];
  Cyclotomic out(m_);
  out.c_ = reduce(m_, acc);
  return out;
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (sgn(c_[i]) != 0) return false;
  }
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw Error(ErrorCode::BadParameters, "value is not rational");
  return c_[0];
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    Rational v = c_[i];
    if (!first) os << (sgn(v) < 0 ? " - " : " + ");
    else if (sgn(v) < 0) os << "-";
    if (sgn(v) < 0) v = -v;
    first = false;
    if (i == 0) {
      os << v.get_str();
    } else {
      if (v != 1) os << v.get_str() << "*";
      os << "z" << m_;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace picent
