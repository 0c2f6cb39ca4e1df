#include "picentlab/character.hpp"

#include <algorithm>
#include <sstream>

#include "picentlab/error.hpp"
#include "picentlab/fp_linalg.hpp"
#include "picentlab/numtheory.hpp"

namespace picent {
namespace {

// Integer coefficient vectors of a class function at a common conductor.
// Characters take values in Z[zeta], so the hermitian sums below can run in
// exact integer arithmetic and only touch rationals once at the end.
struct IntValues {
  std::uint64_t m = 1;
  std::vector<std::vector<std::int64_t>> vals;
};

std::uint64_t common_conductor(const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
  std::uint64_t m = 1;
  for (const auto& x : a) m = nt::lcm(m, x.conductor());
  for (const auto& x : b) m = nt::lcm(m, x.conductor());
  return m;
}

std::optional<IntValues> to_int(const std::vector<Cyclotomic>& values, std::uint64_t m) {
  IntValues out;
  out.m = m;
  for (const auto& v : values) {
    const Cyclotomic e = v.embed(m);
    std::vector<std::int64_t> row;
    row.reserve(e.coefficients().size());
    for (const auto& c : e.coefficients()) {
      if (c.get_den() != 1 || !c.get_num().fits_slong_p()) return std::nullopt;
      row.push_back(c.get_num().get_si());
    }
    out.vals.push_back(std::move(row));
  }
  return out;
}

// sum_j w_j x_j conj(y_j), exact.
Cyclotomic hermitian_sum(const std::vector<Cyclotomic>& x, const std::vector<Cyclotomic>& y,
                         const std::vector<std::int64_t>& w) {
  const std::uint64_t m = common_conductor(x, y);
  const auto xi = to_int(x, m);
  const auto yi = to_int(y, m);
  if (xi && yi) {
    std::vector<__int128> acc(m, 0);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const auto& a = xi->vals[j];
      const auto& b = yi->vals[j];
      for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r] == 0) continue;
        const __int128 ar = static_cast<__int128>(a[r]) * w[j];
        for (std::size_t s = 0; s < b.size(); ++s) {
          if (b[s] != 0) acc[(r + m - s) % m] += ar * b[s];
        }
      }
    }
    std::vector<Rational> coeffs(m);
    for (std::size_t r = 0; r < m; ++r) {
      const auto v = static_cast<std::int64_t>(acc[r]);
      if (static_cast<__int128>(v) != acc[r]) {
        throw Error(ErrorCode::BadParameters, "hermitian sum overflow");
      }
      coeffs[r] = Rational(static_cast<long>(v));
    }
    return Cyclotomic::from_power_sum(m, coeffs);
  }
  Cyclotomic total(m);
  for (std::size_t j = 0; j < x.size(); ++j) {
    total += x[j] * y[j].conj() * Rational(static_cast<long>(w[j]));
  }
  return total;
}

std::vector<std::int64_t> class_sizes(const ConjugacyData& conj) {
  std::vector<std::int64_t> out;
  for (const auto& c : conj.classes) out.push_back(static_cast<std::int64_t>(c.size()));
  return out;
}

void require_same_group(const ClassFunction& a, const ClassFunction& b) {
  if (a.conj->group != b.conj->group) {
    throw Error(ErrorCode::BadParameters, "class functions live on different groups");
  }
}

}  // namespace

bool ClassFunction::operator==(const ClassFunction& o) const {
  return conj->group == o.conj->group && values == o.values;
}

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  require_same_group(*this, o);
  ClassFunction out = *this;
  for (std::size_t i = 0; i < values.size(); ++i) out.values[i] += o.values[i];
  return out;
}

ClassFunction ClassFunction::operator*(const Rational& r) const {
  ClassFunction out = *this;
  for (auto& v : out.values) v = v * r;
  return out;
}

ClassFunction ClassFunction::conj_values() const {
  ClassFunction out = *this;
  for (auto& v : out.values) v = v.conj();
  return out;
}

ClassFunction ClassFunction::galois(std::int64_t a) const {
  ClassFunction out = *this;
  for (auto& v : out.values) v = v.galois(a);
  return out;
}

std::string ClassFunction::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ", ";
    os << values[i].to_string();
  }
  os << "]";
  return os.str();
}

ClassFunction trivial_character(const ConjPtr& conj) {
  return ClassFunction{conj, std::vector<Cyclotomic>(conj->count(), Cyclotomic::integer(1))};
}

ClassFunction regular_character(const ConjPtr& conj) {
  ClassFunction out{conj, std::vector<Cyclotomic>(conj->count(), Cyclotomic::integer(0))};
  out.values[0] = Cyclotomic::integer(static_cast<std::int64_t>(conj->group->order()));
  return out;
}

std::optional<std::size_t> CharacterTable::find(const ClassFunction& chi) const {
  if (chi.conj->group != conj->group) return std::nullopt;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].values == chi.values) return i;
  }
  // Values may be stored at a different conductor.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == chi) return i;
  }
  return std::nullopt;
}

std::uint64_t dixon_prime(std::uint64_t exponent, std::uint64_t order) {
  std::uint64_t q = exponent + 1;
  while (q * q <= 4 * order || !nt::is_prime(q)) q += exponent;
  return q;
}

CharacterTable dixon_table(const ConjPtr& conj_ptr) {
  const auto& conj = *conj_ptr;
  const auto& g = *conj.group;
  const std::size_t k = conj.count();
  const std::uint64_t n = g.order();
  const std::uint64_t e = g.exponent();
  const std::uint64_t q = dixon_prime(e, n);

  const auto class_matrix = [&](std::size_t i) {
    FpMatrix m(k, k, q);
    for (Elem x : conj.classes[i]) {
      const Elem xi = g.inv(x);
      for (std::size_t l = 0; l < k; ++l) {
        auto& entry = m.at(conj.class_of[g.mul(xi, conj.reps[l])], l);
        entry = (entry + 1) % q;
      }
    }
    return m;
  };

  std::vector<std::size_t> order_by_size(k);
  for (std::size_t i = 0; i < k; ++i) order_by_size[i] = i;
  std::stable_sort(order_by_size.begin(), order_by_size.end(), [&](std::size_t a, std::size_t b) {
    return conj.class_size(a) < conj.class_size(b);
  });

  std::vector<FpSubspace> spaces{FpSubspace::whole(k, q)};
  for (std::size_t i : order_by_size) {
    if (i == 0) continue;
    if (std::all_of(spaces.begin(), spaces.end(), [](const FpSubspace& s) { return s.dim() == 1; })) {
      break;
    }
    const FpMatrix m = class_matrix(i);
    std::vector<FpSubspace> next;
    for (const auto& s : spaces) {
      const std::size_t d = s.dim();
      if (d == 1) {
        next.push_back(s);
        continue;
      }
      // Restriction of m to the invariant subspace s, in echelon coordinates.
      FpMatrix a(d, d, q);
      for (std::size_t r = 0; r < d; ++r) {
        const auto image = m.apply(s.basis()[r]);
        for (std::size_t t = 0; t < d; ++t) a.at(t, r) = image[s.pivots()[t]];
      }
      std::size_t found = 0;
      for (std::uint64_t lambda = 0; lambda < q && found < d; ++lambda) {
        const auto null = (a - FpMatrix::identity(d, q).scaled(lambda)).nullspace();
        if (null.empty()) continue;
        std::vector<std::vector<std::uint64_t>> vecs;
        for (const auto& c : null) {
          std::vector<std::uint64_t> v(k, 0);
          for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t col = 0; col < k; ++col) {
              v[col] = (v[col] + c[r] * s.basis()[r][col]) % q;
            }
          }
          vecs.push_back(std::move(v));
        }
        found += vecs.size();
        next.push_back(FpSubspace::span(vecs, k, q));
      }
      if (found != d) {
        throw Error(ErrorCode::DegenerateEigenspaces,
                    "class matrix " + std::to_string(i) + " is not diagonalizable mod " +
                        std::to_string(q));
      }
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k) {
    throw Error(ErrorCode::DegenerateEigenspaces,
                "common eigenspaces did not split into lines (" + std::to_string(spaces.size()) +
                    " of " + std::to_string(k) + ")");
  }

  const auto sizes = class_sizes(conj);
  const std::uint64_t root = nt::pow_mod(nt::primitive_root(q), (q - 1) / e, q);
  std::vector<std::uint64_t> zpow(e);
  zpow[0] = 1;
  for (std::uint64_t t = 1; t < e; ++t) zpow[t] = nt::mul_mod(zpow[t - 1], root, q);
  // power_class[j][s] = class of rep_j^s.
  std::vector<std::vector<std::uint32_t>> power_class(k, std::vector<std::uint32_t>(e));
  for (std::size_t j = 0; j < k; ++j) {
    Elem cur = 0;
    for (std::uint64_t s = 0; s < e; ++s) {
      power_class[j][s] = conj.class_of[cur];
      cur = g.mul(cur, conj.reps[j]);
    }
  }
  const std::uint64_t inv_e = nt::inv_mod(e % q, q);
  const std::uint64_t dmax = nt::isqrt(n);

  CharacterTable table;
  table.conj = conj_ptr;
  table.conductor = e;
  table.prime = q;
  for (const auto& s : spaces) {
    auto w = s.basis()[0];
    if (w[0] == 0) throw Error(ErrorCode::DegenerateEigenspaces, "eigenvector vanishes at 1");
    const std::uint64_t scale = nt::inv_mod(w[0], q);
    for (auto& x : w) x = nt::mul_mod(x, scale, q);

    std::uint64_t norm = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t term = nt::mul_mod(
          nt::mul_mod(w[j], w[conj.inverse_class(j)], q),
          nt::inv_mod(static_cast<std::uint64_t>(sizes[j]) % q, q), q);
      norm = (norm + term) % q;
    }
    const std::uint64_t target = nt::mul_mod(n % q, nt::inv_mod(norm, q), q);
    std::uint64_t degree = 0;
    for (std::uint64_t d = 1; d <= dmax; ++d) {
      if (nt::mul_mod(d, d, q) == target) {
        degree = d;
        break;
      }
    }
    if (degree == 0) throw Error(ErrorCode::DegenerateEigenspaces, "no admissible degree");

    std::vector<std::uint64_t> chi_mod(k);
    for (std::size_t j = 0; j < k; ++j) {
      chi_mod[j] = nt::mul_mod(nt::mul_mod(degree, w[j], q),
                               nt::inv_mod(static_cast<std::uint64_t>(sizes[j]) % q, q), q);
    }

    ClassFunction chi{conj_ptr, {}};
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Rational> mult(e);
      for (std::uint64_t r = 0; r < e; ++r) {
        std::uint64_t acc = 0;
        for (std::uint64_t t = 0; t < e; ++t) {
          const std::uint64_t exp = (e - (r * t) % e) % e;
          acc = (acc + nt::mul_mod(chi_mod[power_class[j][t]], zpow[exp], q)) % q;
        }
        const std::uint64_t mr = nt::mul_mod(acc, inv_e, q);
        if (mr > degree) {
          throw Error(ErrorCode::DegenerateEigenspaces, "eigenvalue multiplicity out of range");
        }
        mult[r] = static_cast<long>(mr);
      }
      chi.values.push_back(Cyclotomic::from_power_sum(e, mult));
    }
    table.rows.push_back(std::move(chi));
  }

  const auto is_trivial = [](const ClassFunction& c) {
    for (const auto& v : c.values) {
      if (v != Cyclotomic::integer(1)) return false;
    }
    return true;
  };
  std::sort(table.rows.begin(), table.rows.end(),
            [&](const ClassFunction& a, const ClassFunction& b) {
              const bool ta = is_trivial(a), tb = is_trivial(b);
              if (ta != tb) return ta;
              const Rational da = a.degree().rational_value(), db = b.degree().rational_value();
              if (da != db) return da < db;
              for (std::size_t j = 0; j < a.values.size(); ++j) {
                if (a.values[j] != b.values[j]) return a.values[j].less(b.values[j]);
              }
              return false;
            });
  for (const auto& row : table.rows) {
    table.degrees.push_back(row.degree().rational_value().get_num().get_ui());
  }
  if (auto bad = validate_table(table)) {
    throw Error(ErrorCode::DegenerateEigenspaces, "computed table failed validation: " + *bad);
  }
  return table;
}

std::optional<std::string> validate_table(const CharacterTable& table) {
  const auto& conj = *table.conj;
  const std::size_t k = conj.count();
  const auto n = static_cast<std::int64_t>(conj.group->order());
  if (table.rows.size() != k) {
    return "row count " + std::to_string(table.rows.size()) + " differs from class count " +
           std::to_string(k);
  }
  std::int64_t deg_sq = 0;
  for (const auto& row : table.rows) {
    if (row.values.size() != k) return std::string("row has wrong length");
    const auto d = row.degree();
    if (!d.is_rational() || d.rational_value().get_den() != 1 || sgn(d.rational_value()) <= 0) {
      return "degree " + d.to_string() + " is not a positive integer";
    }
    const auto dv = d.rational_value().get_num().get_si();
    deg_sq += dv * dv;
  }
  if (deg_sq != n) return "sum of squared degrees is " + std::to_string(deg_sq);
  const auto sizes = class_sizes(conj);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const auto s = hermitian_sum(table.rows[i].values, table.rows[j].values, sizes);
      const auto expect = Cyclotomic::integer(i == j ? n : 0);
      if (s != expect) {
        return "row orthogonality fails for rows " + std::to_string(i) + ", " + std::to_string(j);
      }
    }
  }
  std::vector<std::vector<Cyclotomic>> cols(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < k; ++r) cols[c].push_back(table.rows[r].values[c]);
  }
  const std::vector<std::int64_t> ones(k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const auto s = hermitian_sum(cols[i], cols[j], ones);
      const auto expect = Cyclotomic::integer(
          i == j ? static_cast<std::int64_t>(conj.centralizer_orders[i]) : 0);
      if (s != expect) {
        return "column orthogonality fails for classes " + std::to_string(i) + ", " +
               std::to_string(j);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_galois_stable(const CharacterTable& table) {
  const std::uint64_t e = table.conductor;
  for (std::uint64_t a = 1; a < e; ++a) {
    if (nt::gcd(a, e) != 1) continue;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (!table.find(table.rows[r].galois(static_cast<std::int64_t>(a)))) {
        return "row " + std::to_string(r) + " is not mapped to a row by zeta -> zeta^" +
               std::to_string(a);
      }
    }
  }
  return std::nullopt;
}

Rational inner_product(const ClassFunction& a, const ClassFunction& b) {
  require_same_group(a, b);
  const auto s = hermitian_sum(a.values, b.values, class_sizes(*a.conj));
  if (!s.is_rational()) {
    throw Error(ErrorCode::BadParameters, "inner product is not rational: " + s.to_string());
  }
  Rational out = s.rational_value() / Rational(static_cast<long>(a.group()->order()));
  out.canonicalize();
  return out;
}

ClassFunction tensor(const ClassFunction& a, const ClassFunction& b) {
  require_same_group(a, b);
  ClassFunction out{a.conj, {}};
  for (std::size_t i = 0; i < a.values.size(); ++i) out.values.push_back(a.values[i] * b.values[i]);
  return out;
}

ClassFunction induce(const ClassFunction& chi, const Embedding& sub, const ConjPtr& parent_conj) {
  if (chi.group() != sub.group || sub.parent != parent_conj->group) {
    throw Error(ErrorCode::NotSubgroup, "class function does not live on the embedded subgroup");
  }
  const auto& hconj = *chi.conj;
  const auto& gconj = *parent_conj;
  std::vector<Cyclotomic> sums(gconj.count(), Cyclotomic(1));
  for (std::size_t c = 0; c < hconj.count(); ++c) {
    const auto target = gconj.class_of[sub.to_parent[hconj.reps[c]]];
    sums[target] += chi.values[c] * Rational(static_cast<long>(hconj.class_size(c)));
  }
  ClassFunction out{parent_conj, {}};
  const auto h_order = static_cast<long>(sub.group->order());
  for (std::size_t k = 0; k < gconj.count(); ++k) {
    Rational factor(static_cast<long>(gconj.centralizer_orders[k]), h_order);
    factor.canonicalize();
    out.values.push_back(sums[k] * factor);
  }
  return out;
}

ClassFunction restrict_to(const ClassFunction& chi, const Embedding& sub, const ConjPtr& sub_conj) {
  if (chi.group() != sub.parent || sub_conj->group != sub.group) {
    throw Error(ErrorCode::NotSubgroup, "embedding does not match the class functions");
  }
  ClassFunction out{sub_conj, {}};
  for (Elem rep : sub_conj->reps) out.values.push_back(chi.at(sub.to_parent[rep]));
  return out;
}

ClassFunction inflate(const ClassFunction& chi, const ConjPtr& parent_conj) {
  const auto* sd = parent_conj->group->semidirect();
  if (sd == nullptr || sd->actor != chi.group()) {
    throw Error(ErrorCode::NoProjection, "no structural projection onto the character's group");
  }
  ClassFunction out{parent_conj, {}};
  for (Elem rep : parent_conj->reps) out.values.push_back(chi.at(sd->actor_part(rep)));
  return out;
}

std::vector<std::size_t> irr_over(const CharacterTable& table, const Subgroup& z,
                                  const std::vector<Cyclotomic>& phi) {
  const auto& g = *table.group();
  if (z.parent != table.group()) throw Error(ErrorCode::NotSubgroup, "subgroup of another group");
  if (phi.size() != z.size()) throw Error(ErrorCode::BadParameters, "phi has wrong length");
  for (Elem x : z.elements) {
    for (Elem s : g.generators()) {
      if (g.mul(x, s) != g.mul(s, x)) {
        throw Error(ErrorCode::NotCentral, "element " + std::to_string(x) +
                                               " does not commute with generator " +
                                               std::to_string(s));
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& chi = table.rows[r];
    bool ok = true;
    for (std::size_t i = 0; i < z.size() && ok; ++i) {
      ok = chi.at(z.elements[i]) == chi.degree() * phi[i];
    }
    if (ok) out.push_back(r);
  }
  return out;
}

std::vector<std::size_t> irr_above(const CharacterTable& table, const Embedding& n,
                                   const ConjPtr& n_conj, const ClassFunction& theta) {
  if (!is_normal(n.image())) throw Error(ErrorCode::NotNormal, "subgroup is not normal");
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (sgn(inner_product(restrict_to(table.rows[r], n, n_conj), theta)) != 0) out.push_back(r);
  }
  return out;
}

std::vector<std::size_t> rows_with_kernel_containing(const CharacterTable& table,
                                                     const Subgroup& n) {
  const auto& conj = *table.conj;
  std::vector<std::uint8_t> meets(conj.count(), 0);
  for (Elem x : n.elements) meets[conj.class_of[x]] = 1;
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    bool ok = true;
    for (std::size_t c = 0; c < conj.count() && ok; ++c) {
      if (meets[c]) ok = table.rows[r].values[c] == table.rows[r].degree();
    }
    if (ok) out.push_back(r);
  }
  return out;
}

}  // namespace picent
