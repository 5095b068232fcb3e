#pragma once

// 1-cocycles C: G -> GL_d(E) for a finite abelian group G of field
// automorphisms, the averaging operators built from them, and Hilbert-90
// solvers returning A with C_a = A a(A)^{-1}.
//
// G is given by a presentation <g_1..g_s | g_i^{m_i} = 1, [g_i, g_j] = 1>.
// Group elements are indexed by exponent tuples (e_1..e_s), 0 <= e_i < m_i,
// in lexicographic order with e_s varying fastest; index 0 is the identity.
// The element with exponents e is the composite g_1^{e_1} o ... o g_s^{e_s}.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "galdesc/error.hpp"
#include "galdesc/fftower.hpp"
#include "galdesc/matrix.hpp"
#include "galdesc/ntheory.hpp"
#include "galdesc/rng.hpp"

namespace galdesc {

template <class Aut>
class GroupPresentation {
 public:
  GroupPresentation() = default;

  GroupPresentation(Aut identity, std::vector<Aut> gens, std::vector<unsigned> orders)
      : id_(std::move(identity)), gens_(std::move(gens)), orders_(std::move(orders)) {
    if (gens_.size() != orders_.size())
      throw Error(Errc::InvalidPresentation, "one order is needed per generator");
    std::size_t total = 1;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (orders_[i] == 0) throw Error(Errc::InvalidPresentation, "generator order must be positive");
      if (!(gens_[i].pow(orders_[i]) == id_))
        throw Error(Errc::InvalidPresentation, "generator " + std::to_string(i) + " does not satisfy its power relation");
      total *= orders_[i];
    }
    exps_.reserve(total);
    elems_.reserve(total);
    std::vector<unsigned> e(gens_.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      Aut a = id_;
      for (std::size_t i = 0; i < gens_.size(); ++i) a = a * gens_[i].pow(e[i]);
      for (const auto& prev : elems_)
        if (prev == a)
          throw Error(Errc::InvalidPresentation, "generated group is smaller than the product of the orders");
      elems_.push_back(a);
      exps_.push_back(e);
      for (std::size_t i = gens_.size(); i-- > 0;) {
        if (++e[i] < orders_[i]) break;
        e[i] = 0;
      }
    }
  }

  std::size_t size() const { return elems_.size(); }
  const Aut& identity() const { return id_; }
  const std::vector<Aut>& generators() const { return gens_; }
  const std::vector<unsigned>& orders() const { return orders_; }
  const std::vector<Aut>& elements() const { return elems_; }
  const Aut& element(std::size_t idx) const { return elems_.at(idx); }
  const std::vector<unsigned>& exponents(std::size_t idx) const { return exps_.at(idx); }

  std::optional<std::size_t> find(const Aut& a) const {
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (elems_[i] == a) return i;
    return std::nullopt;
  }
  std::size_t index_of(const Aut& a) const {
    auto i = find(a);
    if (!i) throw Error(Errc::InvalidPresentation, "automorphism is not in the presented group");
    return *i;
  }
  std::size_t generator_index(std::size_t gen) const {
    std::vector<unsigned> e(gens_.size(), 0);
    e.at(gen) = orders_[gen] > 1 ? 1 : 0;
    return index_of_exponents(e);
  }
  std::size_t index_of_exponents(const std::vector<unsigned>& e) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) idx = idx * orders_[i] + e[i] % orders_[i];
    return idx;
  }

  /// Indices of the subgroup generated by `sub_gens` (elements of this group).
  std::vector<std::size_t> subgroup(const std::vector<Aut>& sub_gens) const {
    std::vector<std::size_t> out{0};
    for (std::size_t head = 0; head < out.size(); ++head)
      for (const auto& g : sub_gens) {
        const std::size_t j = index_of(elems_[out[head]] * g);
        if (std::find(out.begin(), out.end(), j) == out.end()) out.push_back(j);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  Aut id_{};
  std::vector<Aut> gens_;
  std::vector<unsigned> orders_;
  std::vector<Aut> elems_;
  std::vector<std::vector<unsigned>> exps_;
};

/// Thrown when a generator assignment violates a defining relation. For a
/// power relation the defect is C_g g(C_g) ... g^{m-1}(C_g); for a commutator
/// relation it is a(C_b)^{-1} C_a^{-1} C_b b(C_a). Both are I for a cocycle.
template <class T>
class RelationDefectError : public Error {
 public:
  RelationDefectError(std::string relation, Matrix<T> defect)
      : Error(Errc::RelationDefect, "relation " + relation + " fails"),
        relation_(std::move(relation)),
        defect_(std::move(defect)) {}
  const std::string& relation() const { return relation_; }
  const Matrix<T>& defect() const { return defect_; }

 private:
  std::string relation_;
  Matrix<T> defect_;
};

template <class T>
class Cocycle {
 public:
  using Aut = typename T::aut_type;
  using Mat = Matrix<T>;
  using Pres = GroupPresentation<Aut>;

  Cocycle() = default;

  /// Wraps a full table indexed like `pres.elements()`. No checks: callers
  /// must pass a table that already satisfies the cocycle identity.
  static Cocycle from_table_unchecked(Pres pres, std::vector<Mat> table) {
    Cocycle c;
    c.pres_ = std::move(pres);
    c.table_ = std::move(table);
    return c;
  }

  const Pres& presentation() const { return pres_; }
  std::size_t dim() const { return table_.at(0).rows(); }
  const typename T::context_type& context() const { return table_.at(0).context(); }
  std::size_t group_order() const { return pres_.size(); }
  const Mat& at(std::size_t idx) const { return table_.at(idx); }
  const Mat& operator()(const Aut& a) const { return table_.at(pres_.index_of(a)); }
  const std::vector<Mat>& table() const { return table_; }
  std::vector<Mat> generator_values() const {
    std::vector<Mat> out;
    for (std::size_t i = 0; i < pres_.generators().size(); ++i) out.push_back(table_.at(pres_.generator_index(i)));
    return out;
  }

 private:
  Pres pres_;
  std::vector<Mat> table_;
};

namespace detail {

/// C on g^e for e = 0..m, via C_{g^e} = C_g g(C_{g^{e-1}}).
template <class T, class Aut>
std::vector<Matrix<T>> cocycle_powers(const Matrix<T>& cg, const Aut& g, unsigned m) {
  std::vector<Matrix<T>> out{Matrix<T>::identity(cg.context(), cg.rows())};
  for (unsigned e = 1; e <= m; ++e) out.push_back(cg * out.back().apply(g));
  return out;
}

}  // namespace detail

/// Extends a generator assignment to all of G along normal-form words and
/// checks power relations, commutator relations and finally the cocycle
/// identity C_{ab} = C_a a(C_b) on every pair.
template <class T, class Aut>
Cocycle<T> validate_and_close(const GroupPresentation<Aut>& pres, const std::vector<Matrix<T>>& gen_values) {
  using Mat = Matrix<T>;
  const auto& gens = pres.generators();
  if (gen_values.size() != gens.size()) throw Error(Errc::DimensionMismatch, "one matrix is needed per generator");
  if (gens.empty()) throw Error(Errc::DimensionMismatch, "trivial group: use trivial_cocycle");
  const auto& ctx = gen_values[0].context();
  const std::size_t d = gen_values[0].rows();
  for (const auto& c : gen_values) {
    if (!c.is_square() || c.rows() != d) throw Error(Errc::DimensionMismatch, "cocycle values must all be d x d");
    if (&c.context() != &ctx) throw Error(Errc::ContextMismatch, "cocycle values over different fields");
    if (!is_invertible(c)) throw Error(Errc::SingularMatrix, "cocycle value is not invertible");
  }
  std::vector<std::vector<Mat>> powers;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    powers.push_back(detail::cocycle_powers(gen_values[i], gens[i], pres.orders()[i]));
    if (!powers.back().back().is_identity())
      throw RelationDefectError<T>("g" + std::to_string(i) + "^" + std::to_string(pres.orders()[i]) + " = 1",
                                   powers.back().back());
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Mat& ca = gen_values[i];
      const Mat& cb = gen_values[j];
      Mat defect = inverse(cb.apply(gens[i])) * inverse(ca) * cb * ca.apply(gens[j]);
      if (!defect.is_identity())
        throw RelationDefectError<T>("[g" + std::to_string(i) + ",g" + std::to_string(j) + "] = 1", defect);
    }
  std::vector<Mat> table;
  table.reserve(pres.size());
  for (std::size_t idx = 0; idx < pres.size(); ++idx) {
    const auto& e = pres.exponents(idx);
    Mat cur = Mat::identity(ctx, d);
    for (std::size_t i = gens.size(); i-- > 0;) cur = powers[i][e[i]] * cur.apply(gens[i].pow(e[i]));
    table.push_back(std::move(cur));
  }
  for (std::size_t a = 0; a < pres.size(); ++a)
    for (std::size_t b = 0; b < pres.size(); ++b) {
      const std::size_t ab = pres.index_of(pres.element(a) * pres.element(b));
      if (!(table[ab] == table[a] * table[b].apply(pres.element(a))))
        throw RelationDefectError<T>("C_ab = C_a a(C_b)", inverse(table[ab]) * table[a] * table[b].apply(pres.element(a)));
    }
  return Cocycle<T>::from_table_unchecked(pres, std::move(table));
}

template <class T, class Aut>
Cocycle<T> trivial_cocycle(const GroupPresentation<Aut>& pres, const typename T::context_type& ctx, std::size_t d) {
  return Cocycle<T>::from_table_unchecked(pres, std::vector<Matrix<T>>(pres.size(), Matrix<T>::identity(ctx, d)));
}

/// C_a = A a(A)^{-1}.
template <class T, class Aut>
Cocycle<T> coboundary(const GroupPresentation<Aut>& pres, const Matrix<T>& a) {
  std::vector<Matrix<T>> table;
  for (const auto& g : pres.elements()) table.push_back(a * inverse(a.apply(g)));
  return Cocycle<T>::from_table_unchecked(pres, std::move(table));
}

/// Sum over G of a(x).
template <class T, class Aut>
T group_trace(const GroupPresentation<Aut>& pres, const T& x) {
  T acc = T::zero(x.context());
  for (const auto& a : pres.elements()) acc += x.apply(a);
  return acc;
}

/// Product over G of a(x).
template <class T, class Aut>
T group_norm(const GroupPresentation<Aut>& pres, const T& x) {
  T acc = T::one(x.context());
  for (const auto& a : pres.elements()) acc *= x.apply(a);
  return acc;
}

/// theta with group trace 1: first element of the spanning set with nonzero
/// trace, divided by its trace.
template <class T, class Aut>
T group_trace_one(const GroupPresentation<Aut>& pres, const typename T::context_type& ctx) {
  for (const T& b : spanning_set(ctx)) {
    const T t = group_trace(pres, b);
    if (!t.is_zero()) return t.inverse() * b;
  }
  throw Error(Errc::PreconditionViolated, "trace vanishes on a spanning set");
}

/// Pi_C(X) = sum_a C_a a(X).
template <class T>
Matrix<T> pi_c(const Cocycle<T>& c, const Matrix<T>& x) {
  const auto& pres = c.presentation();
  Matrix<T> acc = Matrix<T>::zeros(x.context(), c.dim(), x.cols());
  for (std::size_t i = 0; i < pres.size(); ++i) acc += c.at(i) * x.apply(pres.element(i));
  return acc;
}

/// Gamma_a(X) = C_a a(X) - X.
template <class T>
Matrix<T> gamma(const Cocycle<T>& c, const typename T::aut_type& a, const Matrix<T>& x) {
  return c(a) * x.apply(a) - x;
}

/// Column versions act on d x 1 vectors with the same formulas.
template <class T>
Matrix<T> pi_hat(const Cocycle<T>& c, const Matrix<T>& x) {
  if (x.cols() != 1 || x.rows() != c.dim()) throw Error(Errc::DimensionMismatch, "pi_hat expects a d x 1 column");
  return pi_c(c, x);
}
template <class T>
Matrix<T> gamma_hat(const Cocycle<T>& c, const typename T::aut_type& a, const Matrix<T>& x) {
  if (x.cols() != 1 || x.rows() != c.dim()) throw Error(Errc::DimensionMismatch, "gamma_hat expects a d x 1 column");
  return gamma(c, a, x);
}

/// pi_C = |G|^{-1} Pi_C, defined only when char E does not divide |G|.
template <class T>
Matrix<T> pi_small(const Cocycle<T>& c, const Matrix<T>& x) {
  const auto ch = characteristic(c.context());
  if (ch != 0 && c.group_order() % ch == 0)
    throw Error(Errc::PCharDividesG, "characteristic divides |G|; pi_C is undefined");
  return pi_c(c, x) * T::from_int(c.context(), static_cast<long long>(c.group_order())).inverse();
}

/// D_a = Y^{-1} C_a a(Y), cohomologous to C.
template <class T>
Cocycle<T> transport(const Cocycle<T>& c, const Matrix<T>& y) {
  const Matrix<T> yi = inverse(y);
  const auto& pres = c.presentation();
  std::vector<Matrix<T>> table;
  for (std::size_t i = 0; i < pres.size(); ++i) table.push_back(yi * c.at(i) * y.apply(pres.element(i)));
  return Cocycle<T>::from_table_unchecked(pres, std::move(table));
}

/// true iff A is invertible and C_a a(A) = A for every group element.
template <class T>
bool is_h90_solution(const Cocycle<T>& c, const Matrix<T>& a) {
  if (a.rows() != c.dim() || !is_invertible(a)) return false;
  const auto& pres = c.presentation();
  for (std::size_t i = 0; i < pres.size(); ++i)
    if (!(c.at(i) * a.apply(pres.element(i)) == a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Additive Hilbert 90

/// Extends an additive assignment g -> z_g (1 x k rows) to all of G with
/// z_{ab} = z_a + a(z_b), checking the relations. Throws NotAdditiveCocycle.
template <class T, class Aut>
std::vector<Matrix<T>> close_additive(const GroupPresentation<Aut>& pres, const std::vector<Matrix<T>>& gen_values) {
  using Mat = Matrix<T>;
  const auto& gens = pres.generators();
  if (gen_values.size() != gens.size() || gens.empty())
    throw Error(Errc::DimensionMismatch, "one row is needed per generator");
  const auto& ctx = gen_values[0].context();
  const std::size_t k = gen_values[0].cols();
  const Mat zero = Mat::zeros(ctx, 1, k);
  std::vector<std::vector<Mat>> powers;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Mat> pw{zero};
    for (unsigned e = 1; e <= pres.orders()[i]; ++e) pw.push_back(gen_values[i] + pw.back().apply(gens[i]));
    if (!pw.back().is_zero()) throw Error(Errc::NotAdditiveCocycle, "power relation fails for generator " + std::to_string(i));
    powers.push_back(std::move(pw));
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!(gen_values[i] + gen_values[j].apply(gens[i]) == gen_values[j] + gen_values[i].apply(gens[j])))
        throw Error(Errc::NotAdditiveCocycle, "commutator relation fails");
  std::vector<Mat> table;
  for (std::size_t idx = 0; idx < pres.size(); ++idx) {
    const auto& e = pres.exponents(idx);
    Mat cur = zero;
    for (std::size_t i = gens.size(); i-- > 0;) cur = powers[i][e[i]] + cur.apply(gens[i].pow(e[i]));
    table.push_back(std::move(cur));
  }
  return table;
}

namespace detail {

/// w = sum_b z_b b(theta) with Tr(theta) = 1; satisfies z_a = w - a(w).
template <class T, class Aut>
Matrix<T> additive_from_table(const GroupPresentation<Aut>& pres, const std::vector<Matrix<T>>& z) {
  const auto& ctx = z.at(0).context();
  const T theta = group_trace_one<T>(pres, ctx);
  Matrix<T> w = Matrix<T>::zeros(ctx, z[0].rows(), z[0].cols());
  for (std::size_t i = 0; i < pres.size(); ++i) w += z[i] * theta.apply(pres.element(i));
  for (std::size_t i = 0; i < pres.size(); ++i)
    if (!(z[i] == w - w.apply(pres.element(i))))
      throw Error(Errc::NotAdditiveCocycle, "additive cocycle identity fails");
  return w;
}

}  // namespace detail

template <class T, class Aut>
Matrix<T> solve_h90_additive(const GroupPresentation<Aut>& pres, const std::vector<Matrix<T>>& gen_values) {
  return detail::additive_from_table(pres, close_additive(pres, gen_values));
}

// ---------------------------------------------------------------------------
// Multiplicative Hilbert 90

enum class H90Strategy { Scalar, Structured, Random, Deterministic };

inline std::string_view strategy_name(H90Strategy s) {
  switch (s) {
    case H90Strategy::Scalar: return "scalar";
    case H90Strategy::Structured: return "structured";
    case H90Strategy::Random: return "random";
    case H90Strategy::Deterministic: return "deterministic";
  }
  return "?";
}

inline H90Strategy parse_strategy(std::string_view s) {
  for (auto v : {H90Strategy::Scalar, H90Strategy::Structured, H90Strategy::Random, H90Strategy::Deterministic})
    if (strategy_name(v) == s) return v;
  throw Error(Errc::MalformedInput, "unknown strategy '" + std::string(s) + "'");
}

struct H90Options {
  H90Strategy strategy = H90Strategy::Deterministic;
  std::uint64_t seed = 0;
  unsigned max_tries = 64;
};

template <class T>
struct H90Result {
  Matrix<T> a;
  unsigned candidates = 0;  // candidates evaluated, including the successful one
};

namespace detail {

/// Scalars tried before any sampling: the trace-one element, then a spanning
/// set of E over F.
template <class T, class Aut>
std::vector<T> scan_scalars(const GroupPresentation<Aut>& pres, const typename T::context_type& ctx) {
  std::vector<T> out{group_trace_one<T>(pres, ctx)};
  for (T& b : spanning_set(ctx)) out.push_back(std::move(b));
  return out;
}

template <class T>
Matrix<T> h90_deterministic(const Cocycle<T>& c) {
  using Mat = Matrix<T>;
  const auto& ctx = c.context();
  const std::size_t d = c.dim();
  const auto& pres = c.presentation();

  // A lambda whose Pi_C(lambda I) has nonzero first column; the map is
  // F-linear in lambda, so some element of a spanning set works.
  std::optional<Mat> x;
  for (const T& lam : scan_scalars<T>(pres, ctx)) {
    Mat col = Mat::zeros(ctx, d, 1);
    for (std::size_t i = 0; i < pres.size(); ++i) col += c.at(i).col(0) * lam.apply(pres.element(i));
    if (!col.is_zero()) {
      x = std::move(col);
      break;
    }
  }
  if (!x) throw Error(Errc::PreconditionViolated, "Pi_C(lambda I) has zero first column on a spanning set");

  // Y = [x | lexicographically first standard vectors completing a basis].
  Mat y(ctx, d, d);
  y.set_block(0, 0, *x);
  {
    SpanBasis<T> span(ctx, d);
    span.insert(x->transpose().data());
    std::size_t next = 1;
    for (std::size_t j = 0; j < d && next < d; ++j) {
      std::vector<T> e(d, T::zero(ctx));
      e[j] = T::one(ctx);
      if (span.insert(e)) y(j, next++) = T::one(ctx);
    }
  }
  if (d == 1) return y;

  // D = Y^{-1} C a(Y) = [[1, z_a], [0, C'_a]].
  const Cocycle<T> dcy = transport(c, y);
  std::vector<Mat> sub;
  for (std::size_t i = 0; i < pres.size(); ++i) sub.push_back(dcy.at(i).block(1, 1, d - 1, d - 1));
  const Mat a_sub = h90_deterministic(Cocycle<T>::from_table_unchecked(pres, std::move(sub)));

  Mat y2 = Mat::identity(ctx, d);
  y2.set_block(1, 1, a_sub);
  const Cocycle<T> d2 = transport(dcy, y2);  // [[1, z'_a], [0, I]]
  std::vector<Mat> z;
  for (std::size_t i = 0; i < pres.size(); ++i) z.push_back(d2.at(i).block(0, 1, 1, d - 1));
  const Mat w = additive_from_table(pres, z);

  Mat u = Mat::identity(ctx, d);
  u.set_block(0, 1, w);
  return y * y2 * u;
}

}  // namespace detail

/// Returns A with C_a = A a(A)^{-1} for all a, verified before returning.
/// The Las Vegas strategies evaluate Pi_C on candidate inputs: first a fixed
/// scan (scalar / structured), then up to `max_tries` random candidates drawn
/// from per-trial streams derive_seed(seed, "h90.<strategy>", trial).
template <class T>
H90Result<T> solve_h90(const Cocycle<T>& c, const H90Options& opt = {}) {
  using Mat = Matrix<T>;
  const auto& ctx = c.context();
  const std::size_t d = c.dim();
  H90Result<T> res;
  auto accept = [&](const Mat& a) {
    ++res.candidates;
    if (!is_h90_solution(c, a)) return false;
    res.a = a;
    return true;
  };
  const std::string tag = "h90." + std::string(strategy_name(opt.strategy));

  switch (opt.strategy) {
    case H90Strategy::Deterministic: {
      if (accept(detail::h90_deterministic(c))) return res;
      throw Error(Errc::PreconditionViolated, "deterministic solver produced an invalid matrix");
    }
    case H90Strategy::Scalar: {
      for (const T& lam : detail::scan_scalars<T>(c.presentation(), ctx))
        if (accept(pi_c(c, Mat::scalar(ctx, d, lam)))) return res;
      for (unsigned t = 0; t < opt.max_tries; ++t) {
        Rng rng(derive_seed(opt.seed, tag, t));
        if (accept(pi_c(c, Mat::scalar(ctx, d, random_element(ctx, rng))))) return res;
      }
      break;
    }
    case H90Strategy::Structured: {
      const Mat p = Mat::cycle_permutation(ctx, d);
      std::vector<Mat> ppow{Mat::identity(ctx, d)};
      for (std::size_t i = 1; i < d; ++i) ppow.push_back(ppow.back() * p);
      for (const T& lam : detail::scan_scalars<T>(c.presentation(), ctx))
        for (const auto& pi : ppow) {
          if (accept(pi_c(c, pi * lam))) return res;
        }
      // Then random combinations sum_i P^i lambda_i.
      for (unsigned t = 0; t < opt.max_tries; ++t) {
        Rng rng(derive_seed(opt.seed, tag, t));
        Mat x = Mat::zeros(ctx, d, d);
        for (const auto& pi : ppow) x += pi * random_element(ctx, rng);
        if (accept(pi_c(c, x))) return res;
      }
      break;
    }
    case H90Strategy::Random: {
      for (unsigned t = 0; t < opt.max_tries; ++t) {
        Rng rng(derive_seed(opt.seed, tag, t));
        Mat x(ctx, d, d);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) x(i, j) = random_element(ctx, rng);
        if (accept(pi_c(c, x))) return res;
      }
      break;
    }
  }
  throw Error(Errc::ExhaustedTries,
              std::string(strategy_name(opt.strategy)) + " strategy found no invertible Pi_C value in " +
                  std::to_string(res.candidates) + " candidates");
}

// ---------------------------------------------------------------------------
// Coset evaluation of Pi_C

struct OpCounter {
  std::size_t applications = 0;  // evaluations of X -> C_r r(X)
};

/// Pi_C(X) through a subgroup chain G = G_0 > G_1 > ... > G_k = 1, each G_i
/// given by generators: Pi_{G_{i-1}} = sum over left coset representatives r
/// of G_i in G_{i-1} of C_r r(Pi_{G_i}).
template <class T>
Matrix<T> coset_pi(const Cocycle<T>& c, const std::vector<std::vector<typename T::aut_type>>& chain,
                   const Matrix<T>& x, OpCounter* counter = nullptr) {
  const auto& pres = c.presentation();
  if (chain.size() < 2) throw Error(Errc::InvalidChain, "chain needs at least G and the trivial group");
  std::vector<std::vector<std::size_t>> groups;
  try {
    for (const auto& gens : chain) groups.push_back(pres.subgroup(gens));
  } catch (const Error&) {
    throw Error(Errc::InvalidChain, "chain member is not a subgroup of G");
  }
  if (groups.front().size() != pres.size()) throw Error(Errc::InvalidChain, "chain must start at G");
  if (groups.back().size() != 1) throw Error(Errc::InvalidChain, "chain must end at the trivial group");
  for (std::size_t i = 1; i < groups.size(); ++i)
    if (!std::includes(groups[i - 1].begin(), groups[i - 1].end(), groups[i].begin(), groups[i].end()))
      throw Error(Errc::InvalidChain, "chain is not decreasing");

  Matrix<T> cur = x;
  for (std::size_t i = groups.size() - 1; i-- > 0;) {
    const auto& big = groups[i];
    const auto& small = groups[i + 1];
    std::vector<bool> covered(pres.size(), false);
    Matrix<T> next = Matrix<T>::zeros(x.context(), c.dim(), x.cols());
    for (std::size_t r : big) {
      if (covered[r]) continue;
      for (std::size_t h : small) covered[pres.index_of(pres.element(r) * pres.element(h))] = true;
      next += c.at(r) * cur.apply(pres.element(r));
      if (counter) ++counter->applications;
    }
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Finite-field helpers

using FfMat = Matrix<FieldElem>;
using FfCocycle = Cocycle<FieldElem>;
using FfPresentation = GroupPresentation<AutPower>;

/// Gal(E/F) = <phi> as a one-generator presentation (no generators if E = F).
inline FfPresentation full_group(const FieldCtx& ctx) {
  if (ctx.m() == 1) return FfPresentation(AutPower::identity(1), {}, {});
  return FfPresentation(AutPower::identity(ctx.m()), {ctx.frobenius()}, {ctx.m()});
}

/// Elements of F = E^G, enumerated from a GF(p)-basis of F.
inline std::vector<FieldElem> base_field_elements(const FieldCtx& ctx) {
  const auto basis = base_field_basis(ctx);
  std::vector<FieldElem> out;
  const nt::u64 count = nt::ipow(ctx.p(), static_cast<unsigned>(basis.size()));
  for (nt::u64 idx = 0; idx < count; ++idx) {
    FieldElem x = FieldElem::zero(ctx);
    nt::u64 t = idx;
    for (const auto& b : basis) {
      x += FieldElem::from_int(ctx, static_cast<long long>(t % ctx.p())) * b;
      t /= ctx.p();
    }
    out.push_back(std::move(x));
  }
  return out;
}

struct T8Instance {
  FfMat a;         // upper triangular, C_phi = A phi(A)^{-1}
  FfCocycle c;
  std::vector<FieldElem> inverse_diagonal;  // b_i = a_ii^{-1}
};

/// Cocycle over the full group whose every value Pi_C(lambda I) is singular.
/// The inverse diagonal entries run through 1 and c + b' (c in F, b' not in F),
/// so that every lambda lies in some kernel {lambda : Tr(b_i lambda) = 0}:
/// for Tr(lambda) != 0 take c = -Tr(b' lambda)/Tr(lambda). Needs |F| + 1 <= d.
inline T8Instance t8_counterexample(const FieldCtxPtr& ctxp, std::size_t d) {
  const FieldCtx& ctx = *ctxp;
  if (ctx.m() < 2) throw Error(Errc::PreconditionViolated, "[E:F] must be at least 2");
  if (ctx.q() >= d) throw Error(Errc::PreconditionViolated, "needs |F| < d");
  FieldElem bprime = FieldElem::zero(ctx);
  for (const auto& b : spanning_set(ctx))
    if (!b.in_base_field()) {
      bprime = b;
      break;
    }
  std::vector<FieldElem> bs{FieldElem::one(ctx)};
  for (const auto& c : base_field_elements(ctx)) bs.push_back(c + bprime);
  while (bs.size() < d) bs.push_back(FieldElem::one(ctx));
  FfMat a(ctx, d, d);
  for (std::size_t i = 0; i < d; ++i) {
    a(i, i) = bs[i].inverse();
    for (std::size_t j = i + 1; j < d; ++j) a(i, j) = FieldElem::one(ctx);
  }
  const auto pres = full_group(ctx);
  return {a, coboundary(pres, a), bs};
}

}  // namespace galdesc
