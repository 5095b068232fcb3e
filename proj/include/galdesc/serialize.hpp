#pragma once

// JSON text forms for contexts, elements, matrices, representations,
// cocycles and descent certificates. Keys are emitted in a fixed order so
// identical values always serialize to identical bytes.
//
//   finite field    {"kind":"finite","p":3,"n":2,"d0":1,"modulus":[1,0,1]}
//   element         [c0,c1,...]             little-endian over GF(p)
//   cyclotomic      {"kind":"cyclotomic","conductor":8,"subgroup":[1,5]}
//   element         ["c0","c1",...]         rationals in powers of zeta
//   matrix          [[e00,e01],[e10,e11]]   row-major
//   automorphism    k                       phi^k, or sigma_k: zeta -> zeta^k

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galdesc/cyclotomic.hpp"
#include "galdesc/descent.hpp"
#include "galdesc/error.hpp"
#include "galdesc/fftower.hpp"

namespace galdesc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "galdesc/1";

[[noreturn]] inline void malformed(const std::string& what) { throw Error(Errc::MalformedInput, what); }

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing key '") + key + "'");
  return *it;
}

inline long long get_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<long long>();
}

inline unsigned get_unsigned(const Json& j, const char* what) {
  const long long v = get_int(j, what);
  if (v < 0 || v > 0xFFFFFFFFLL) malformed(std::string(what) + " must be a nonnegative 32-bit integer");
  return static_cast<unsigned>(v);
}

inline std::uint64_t get_u64(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const long long v = get_int(j, what);
  if (v < 0) malformed(std::string(what) + " must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

inline const Json& get_array(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be a list");
  return j;
}

template <class T>
struct Codec;

template <>
struct Codec<FieldElem> {
  using Ctx = FieldCtx;

  static Json context(const FieldCtx& c) {
    Json j;
    j["kind"] = "finite";
    j["p"] = c.p();
    j["n"] = c.n();
    j["d0"] = c.d0();
    j["modulus"] = c.modulus();
    return j;
  }
  static std::shared_ptr<const FieldCtx> parse_context(const Json& j) {
    const nt::u64 p = get_u64(require(j, "p"), "p");
    const unsigned n = get_unsigned(require(j, "n"), "n");
    const unsigned d0 = j.contains("d0") ? get_unsigned(j["d0"], "d0") : 1;
    std::optional<std::vector<nt::u64>> mod;
    if (j.contains("modulus") && !j["modulus"].is_null()) {
      std::vector<nt::u64> f;
      for (const auto& c : get_array(j["modulus"], "modulus")) f.push_back(get_u64(c, "modulus coefficient"));
      mod = std::move(f);
    }
    return make_field(p, n, d0, mod);
  }

  static Json elem(const FieldElem& x) {
    Json a = Json::array();
    for (auto c : x.coeffs()) a.push_back(c);
    return a;
  }
  static FieldElem parse_elem(const FieldCtx& ctx, const Json& j) {
    if (j.is_number_integer()) return FieldElem::from_int(ctx, j.get<long long>());
    std::vector<long long> c;
    for (const auto& v : get_array(j, "field element")) c.push_back(get_int(v, "field element coefficient"));
    return FieldElem::from_coeffs(ctx, c);
  }

  static AutPower identity(const FieldCtx& ctx) { return AutPower::identity(ctx.m()); }
  static Json aut(const AutPower& a) { return a.k; }
  static AutPower parse_aut(const FieldCtx& ctx, const Json& j) { return AutPower(get_unsigned(j, "automorphism"), ctx.m()); }
};

template <>
struct Codec<CycloElem> {
  using Ctx = CycloCtx;

  static Json context(const CycloCtx& c) {
    Json j;
    j["kind"] = "cyclotomic";
    j["conductor"] = c.n();
    j["subgroup"] = c.subgroup();
    return j;
  }
  static std::shared_ptr<const CycloCtx> parse_context(const Json& j) {
    const unsigned n = get_unsigned(require(j, "conductor"), "conductor");
    std::vector<long long> gens;
    if (j.contains("subgroup"))
      for (const auto& k : get_array(j["subgroup"], "subgroup")) gens.push_back(get_int(k, "subgroup element"));
    for (long long k : gens)
      if (std::gcd(nt::mod_signed(k, n), static_cast<nt::u64>(n)) != 1 && n > 1)
        malformed("subgroup element " + std::to_string(k) + " is not a unit modulo the conductor");
    return make_cyclo(n, gens);
  }

  static Json elem(const CycloElem& x) {
    Json a = Json::array();
    for (const auto& c : x.coeffs()) a.push_back(c.get_str());
    return a;
  }
  static CycloElem parse_elem(const CycloCtx& ctx, const Json& j) {
    auto rational = [](const Json& v) -> mpq_class {
      if (v.is_number_integer()) return mpq_class(static_cast<long>(v.get<long long>()));
      if (!v.is_string()) malformed("cyclotomic coefficient must be a rational string or an integer");
      mpq_class q;
      if (q.set_str(v.get<std::string>(), 10) != 0 || v.get<std::string>().empty())
        malformed("bad rational '" + v.get<std::string>() + "'");
      if (q.get_den() == 0) malformed("zero denominator");
      q.canonicalize();
      return q;
    };
    if (j.is_number_integer() || j.is_string()) return CycloElem::from_rational(ctx, rational(j));
    std::vector<mpq_class> c;
    for (const auto& v : get_array(j, "cyclotomic element")) c.push_back(rational(v));
    return CycloElem::from_coeffs(ctx, std::move(c));
  }

  static CycloAut identity(const CycloCtx& ctx) { return CycloAut::identity(ctx.n()); }
  static Json aut(const CycloAut& a) { return a.k; }
  static CycloAut parse_aut(const CycloCtx& ctx, const Json& j) {
    const long long k = get_int(j, "automorphism");
    if (ctx.n() > 1 && std::gcd(nt::mod_signed(k, ctx.n()), static_cast<nt::u64>(ctx.n())) != 1)
      malformed("automorphism index is not a unit");
    return CycloAut(k, ctx.n());
  }
};

// ---------------------------------------------------------------------------
// Matrices

template <class T>
Json matrix_to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(Codec<T>::elem(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
Matrix<T> matrix_from_json(const typename Codec<T>::Ctx& ctx, const Json& j) {
  const auto& rows = get_array(j, "matrix");
  if (rows.empty()) malformed("matrix has no rows");
  const std::size_t c = get_array(rows[0], "matrix row").size();
  if (c == 0) malformed("matrix has no columns");
  Matrix<T> m = Matrix<T>::zeros(ctx, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = get_array(rows[i], "matrix row");
    if (row.size() != c) malformed("matrix rows differ in length");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = Codec<T>::parse_elem(ctx, row[k]);
  }
  return m;
}

template <class T>
Json optional_matrix(const std::optional<Matrix<T>>& m) {
  return m ? matrix_to_json(*m) : Json(nullptr);
}

// ---------------------------------------------------------------------------
// Representations and cocycles

template <class T>
Json representation_to_json(const Representation<T>& rep) {
  Json j;
  j["names"] = rep.names;
  Json gens = Json::array();
  for (const auto& g : rep.gens) gens.push_back(matrix_to_json(g));
  j["generators"] = std::move(gens);
  Json rels = Json::array();
  for (const auto& w : rep.relations) {
    Json word = Json::array();
    for (auto [g, e] : w) word.push_back(Json::array({g, e}));
    rels.push_back(std::move(word));
  }
  j["relations"] = std::move(rels);
  return j;
}

template <class T>
Representation<T> representation_from_json(std::shared_ptr<const typename Codec<T>::Ctx> ctx, const Json& j) {
  std::vector<Matrix<T>> gens;
  for (const auto& g : get_array(require(j, "generators"), "generators")) gens.push_back(matrix_from_json<T>(*ctx, g));
  std::vector<std::string> names;
  if (j.contains("names"))
    for (const auto& n : get_array(j["names"], "names")) {
      if (!n.is_string()) malformed("generator names must be strings");
      names.push_back(n.get<std::string>());
    }
  std::vector<Word> rels;
  if (j.contains("relations"))
    for (const auto& w : get_array(j["relations"], "relations")) {
      Word word;
      for (const auto& letter : get_array(w, "relation word")) {
        if (!letter.is_array() || letter.size() != 2) malformed("relation letters are [generator, exponent] pairs");
        word.emplace_back(get_unsigned(letter[0], "relation generator"), get_int(letter[1], "relation exponent"));
      }
      rels.push_back(std::move(word));
    }
  return make_representation<T>(std::move(ctx), std::move(gens), std::move(names), std::move(rels));
}

template <class T>
Json cocycle_to_json(const Cocycle<T>& c) {
  Json j;
  Json auts = Json::array();
  for (const auto& a : c.presentation().generators()) auts.push_back(Codec<T>::aut(a));
  j["generators"] = std::move(auts);
  j["orders"] = c.presentation().orders();
  Json mats = Json::array();
  for (const auto& m : c.generator_values()) mats.push_back(matrix_to_json(m));
  j["matrices"] = std::move(mats);
  return j;
}

// ---------------------------------------------------------------------------
// Certificates

template <class T>
Json certificate_to_json(const DescentCertificate<T>& cert) {
  using C = Codec<T>;
  Json j;
  j["outcome"] = cert.written() ? "written" : "obstructed";
  j["presentation"] = std::string(presentation_name(cert.presentation));
  Json auts = Json::array();
  for (const auto& a : cert.auts) auts.push_back(C::aut(a));
  j["generators"] = std::move(auts);
  j["orders"] = cert.orders;
  Json dm = Json::array();
  for (const auto& d : cert.intertwiners) dm.push_back(optional_matrix(d));
  j["intertwiners"] = std::move(dm);
  Json lam = Json::array(), mu = Json::array();
  for (const auto& x : cert.lambda) lam.push_back(C::elem(x));
  for (const auto& x : cert.mu) mu.push_back(C::elem(x));
  j["lambda"] = std::move(lam);
  j["mu"] = std::move(mu);
  j["lambda_commutator"] = cert.lambda_commutator ? C::elem(*cert.lambda_commutator) : Json(nullptr);
  j["nu"] = cert.nu ? Json::array({C::elem(cert.nu->first), C::elem(cert.nu->second)}) : Json(nullptr);
  Json cg = Json::array();
  for (const auto& m : cert.cocycle_generators) cg.push_back(matrix_to_json(m));
  j["cocycle_generators"] = std::move(cg);
  j["a"] = optional_matrix(cert.a);
  Json rw = Json::array();
  for (const auto& m : cert.rewritten) rw.push_back(matrix_to_json(m));
  j["rewritten"] = std::move(rw);
  if (cert.obstruction) {
    const auto& ob = *cert.obstruction;
    Json o;
    o["stage"] = std::string(stage_name(ob.stage));
    o["generator"] = ob.generator;
    o["witness"] = ob.witness;
    o["scalar"] = ob.scalar ? C::elem(*ob.scalar) : Json(nullptr);
    j["obstruction"] = std::move(o);
  } else {
    j["obstruction"] = nullptr;
  }
  return j;
}

inline ObstructionStage parse_stage(std::string_view s) {
  for (auto st : {ObstructionStage::NoIntertwiner, ObstructionStage::NotScalar, ObstructionStage::NormUnsolvable,
                  ObstructionStage::NotInKernelIntersection})
    if (stage_name(st) == s) return st;
  malformed("unknown obstruction stage '" + std::string(s) + "'");
}

/// Reads a certificate back. The cocycle table is rebuilt from the generator
/// values, so a forged table cannot slip past the verifier.
template <class T>
DescentCertificate<T> certificate_from_json(const typename Codec<T>::Ctx& ctx, const Json& j) {
  using C = Codec<T>;
  using Mat = Matrix<T>;
  DescentCertificate<T> cert;
  const auto& outcome = require(j, "outcome");
  if (outcome == "written") cert.outcome = DescentOutcome::Written;
  else if (outcome == "obstructed") cert.outcome = DescentOutcome::Obstructed;
  else malformed("outcome must be 'written' or 'obstructed'");
  cert.presentation = parse_presentation(require(j, "presentation").get<std::string>());
  for (const auto& a : get_array(require(j, "generators"), "generators")) cert.auts.push_back(C::parse_aut(ctx, a));
  for (const auto& o : get_array(require(j, "orders"), "orders")) cert.orders.push_back(get_unsigned(o, "order"));
  if (cert.orders.size() != cert.auts.size()) malformed("one order is needed per generator");
  for (const auto& d : get_array(require(j, "intertwiners"), "intertwiners"))
    cert.intertwiners.push_back(d.is_null() ? std::nullopt : std::optional<Mat>(matrix_from_json<T>(ctx, d)));
  for (const auto& x : get_array(require(j, "lambda"), "lambda")) cert.lambda.push_back(C::parse_elem(ctx, x));
  for (const auto& x : get_array(require(j, "mu"), "mu")) cert.mu.push_back(C::parse_elem(ctx, x));
  if (j.contains("lambda_commutator") && !j["lambda_commutator"].is_null())
    cert.lambda_commutator = C::parse_elem(ctx, j["lambda_commutator"]);
  if (j.contains("nu") && !j["nu"].is_null()) {
    const auto& nu = get_array(j["nu"], "nu");
    if (nu.size() != 2) malformed("nu must hold two scalars");
    cert.nu = std::pair<T, T>{C::parse_elem(ctx, nu[0]), C::parse_elem(ctx, nu[1])};
  }
  for (const auto& m : get_array(require(j, "cocycle_generators"), "cocycle_generators"))
    cert.cocycle_generators.push_back(matrix_from_json<T>(ctx, m));
  if (!require(j, "a").is_null()) cert.a = matrix_from_json<T>(ctx, j["a"]);
  for (const auto& m : get_array(require(j, "rewritten"), "rewritten")) cert.rewritten.push_back(matrix_from_json<T>(ctx, m));
  if (j.contains("obstruction") && !j["obstruction"].is_null()) {
    const auto& o = j["obstruction"];
    Obstruction<T> ob;
    ob.stage = parse_stage(require(o, "stage").get<std::string>());
    ob.generator = get_unsigned(require(o, "generator"), "obstruction generator");
    ob.witness = o.value("witness", std::string());
    if (o.contains("scalar") && !o["scalar"].is_null()) ob.scalar = C::parse_elem(ctx, o["scalar"]);
    cert.obstruction = std::move(ob);
  }
  if (cert.written() && !cert.auts.empty() && cert.cocycle_generators.size() == cert.auts.size()) {
    GroupPresentation<typename T::aut_type> pres(C::identity(ctx), cert.auts, cert.orders);
    cert.cocycle = validate_and_close(pres, cert.cocycle_generators);
  }
  return cert;
}

}  // namespace galdesc
