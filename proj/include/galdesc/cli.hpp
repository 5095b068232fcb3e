#pragma once

// Subcommand implementations behind the `galdesc` executable. Each command
// takes a parsed job document plus flag overrides and returns the exit code
// and the exact bytes to emit, so the executable stays a thin shell and the
// same paths are testable in-process.
//
// Exit codes: 0 written / ok, 1 malformed input or rejected certificate,
// 2 mathematical obstruction, 3 Las Vegas search inconclusive.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "galdesc/cocycle.hpp"
#include "galdesc/cyclotomic.hpp"
#include "galdesc/descent.hpp"
#include "galdesc/normsolve.hpp"
#include "galdesc/serialize.hpp"
#include "galdesc/stats.hpp"

namespace galdesc::cli {

enum Exit : int { Ok = 0, Malformed = 1, Obstructed = 2, Inconclusive = 3 };

struct CmdResult {
  int exit_code = Ok;
  std::string output;      // document written to --output or stdout
  std::string diagnostic;  // one line for stderr, empty on success
};

/// Flag values that override the job's "options" object.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> max_tries;
  std::optional<std::string> strategy;
  std::optional<std::string> presentation;
  std::optional<std::string> method;
  std::optional<unsigned> split_m;
};

struct JobOptions {
  std::uint64_t seed = 0;
  H90Strategy strategy = H90Strategy::Deterministic;
  unsigned max_tries = 64;
  PresentationKind presentation = PresentationKind::SingleGenerator;
  unsigned split_m = 0;
  NormMethod method = NormMethod::Gcd;

  Json to_json() const {
    Json j;
    j["seed"] = seed;
    j["strategy"] = std::string(strategy_name(strategy));
    j["max_tries"] = max_tries;
    j["presentation"] = std::string(presentation_name(presentation));
    j["split_m"] = split_m;
    j["method"] = method == NormMethod::Gcd ? "gcd" : "order";
    return j;
  }
};

inline NormMethod parse_method(std::string_view s) {
  if (s == "gcd") return NormMethod::Gcd;
  if (s == "order") return NormMethod::Order;
  malformed("unknown norm method '" + std::string(s) + "'");
}

inline JobOptions read_options(const Json& job, const Overrides& ov) {
  JobOptions o;
  if (job.contains("options")) {
    const Json& j = job["options"];
    if (!j.is_object()) malformed("options must be an object");
    if (j.contains("seed")) o.seed = get_u64(j["seed"], "seed");
    if (j.contains("strategy")) o.strategy = parse_strategy(j["strategy"].get<std::string>());
    if (j.contains("max_tries")) o.max_tries = get_unsigned(j["max_tries"], "max_tries");
    if (j.contains("presentation")) o.presentation = parse_presentation(j["presentation"].get<std::string>());
    if (j.contains("split_m")) o.split_m = get_unsigned(j["split_m"], "split_m");
    if (j.contains("method")) o.method = parse_method(j["method"].get<std::string>());
  }
  if (ov.seed) o.seed = *ov.seed;
  if (ov.max_tries) o.max_tries = *ov.max_tries;
  if (ov.strategy) o.strategy = parse_strategy(*ov.strategy);
  if (ov.presentation) o.presentation = parse_presentation(*ov.presentation);
  if (ov.method) o.method = parse_method(*ov.method);
  if (ov.split_m) o.split_m = *ov.split_m;
  return o;
}

inline Json parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) malformed("document must be a JSON object");
  if (!j.contains("version")) malformed("missing key 'version'");
  if (j["version"] != kFormatVersion) malformed("unrecognized version " + j["version"].dump());
  return j;
}

inline std::string field_kind(const Json& job) {
  const Json& f = require(job, "field");
  if (!f.is_object()) malformed("field must be an object");
  const std::string k = f.value("kind", std::string("finite"));
  if (k != "finite" && k != "cyclotomic") malformed("field kind must be 'finite' or 'cyclotomic'");
  return k;
}

inline int exit_for(Errc c) {
  return c == Errc::NormSearchInconclusive || c == Errc::ExhaustedTries ? Inconclusive : Malformed;
}

inline Json error_json(const Error& e) {
  Json j;
  j["code"] = std::string(errc_name(e.code()));
  j["message"] = e.what();
  return j;
}

inline std::string emit(const Json& doc) { return doc.dump(2) + "\n"; }

/// Header shared by every output document. `job` is the canonical input when
/// it could be built, otherwise the raw input.
inline Json envelope(std::string_view command, const Json& job, std::uint64_t seed) {
  Json d;
  d["version"] = kFormatVersion;
  d["command"] = std::string(command);
  d["seed"] = seed;
  d["job"] = job;
  return d;
}

/// Runs `body` and converts library errors into an error document.
template <class Body>
CmdResult guarded(std::string_view command, const Json& raw, Body body) {
  Json canon = raw;
  std::uint64_t seed = 0;
  try {
    return body(canon, seed);
  } catch (const Error& e) {
    Json d = envelope(command, canon, seed);
    d["status"] = exit_for(e.code()) == Inconclusive ? "inconclusive" : "error";
    d["error"] = error_json(e);
    return {exit_for(e.code()), emit(d), e.what()};
  } catch (const nlohmann::json::exception& e) {
    const Error err(Errc::MalformedInput, e.what());
    Json d = envelope(command, canon, seed);
    d["status"] = "error";
    d["error"] = error_json(err);
    return {Malformed, emit(d), err.what()};
  }
}

inline Json base_job(const Json& field) {
  Json j;
  j["version"] = kFormatVersion;
  j["field"] = field;
  return j;
}

// ---------------------------------------------------------------------------
// rewrite

inline CycloHints read_hints(const CycloCtx& ctx, const Json& job) {
  CycloHints h;
  if (!job.contains("hints")) return h;
  const Json& j = job["hints"];
  if (j.contains("mu"))
    for (const auto& m : get_array(j["mu"], "hints.mu"))
      h.mu.push_back(m.is_null() ? std::nullopt : std::optional<CycloElem>(Codec<CycloElem>::parse_elem(ctx, m)));
  if (j.contains("lambda"))
    for (const auto& l : get_array(j["lambda"], "hints.lambda")) h.lambda.push_back(Codec<CycloElem>::parse_elem(ctx, l));
  return h;
}

inline Json hints_json(const CycloHints& h) {
  Json j;
  Json mu = Json::array(), lam = Json::array();
  for (const auto& m : h.mu) mu.push_back(m ? Codec<CycloElem>::elem(*m) : Json(nullptr));
  for (const auto& l : h.lambda) lam.push_back(Codec<CycloElem>::elem(l));
  j["mu"] = std::move(mu);
  j["lambda"] = std::move(lam);
  return j;
}

template <class T>
CmdResult finish_rewrite(const Representation<T>& rep, const DescentCertificate<T>& cert, const Json& canon,
                         std::uint64_t seed) {
  const auto report = verify_certificate(rep, cert);
  if (!report.ok()) throw Error(Errc::PreconditionViolated, "self-check failed: " + report.failures.front());
  Json d = envelope("rewrite", canon, seed);
  d["status"] = cert.written() ? "written" : "obstructed";
  d["certificate"] = certificate_to_json(cert);
  d["error"] = nullptr;
  std::string diag;
  if (!cert.written()) diag = "obstructed at " + std::string(stage_name(cert.obstruction->stage)) + ": " + cert.obstruction->witness;
  return {cert.written() ? Ok : Obstructed, emit(d), diag};
}

inline CmdResult cmd_rewrite(const Json& job, const Overrides& ov = {}) {
  return guarded("rewrite", job, [&](Json& canon, std::uint64_t& seed) -> CmdResult {
    const JobOptions opt = read_options(job, ov);
    seed = opt.seed;
    if (field_kind(job) == "finite") {
      auto ctx = Codec<FieldElem>::parse_context(job["field"]);
      auto rep = representation_from_json<FieldElem>(ctx, require(job, "representation"));
      canon = base_job(Codec<FieldElem>::context(*ctx));
      canon["representation"] = representation_to_json(rep);
      canon["options"] = opt.to_json();
      RewriteOptions ro;
      ro.strategy = opt.strategy;
      ro.seed = opt.seed;
      ro.presentation = opt.presentation;
      ro.split_m = opt.split_m;
      ro.max_tries = opt.max_tries;
      ro.norm_method = opt.method;
      return finish_rewrite(rep, rewrite(rep, ro), canon, seed);
    }
    auto ctx = Codec<CycloElem>::parse_context(job["field"]);
    auto rep = representation_from_json<CycloElem>(ctx, require(job, "representation"));
    CycloRewriteOptions co;
    co.seed = opt.seed;
    co.max_tries = opt.max_tries;
    co.hints = read_hints(*ctx, job);
    canon = base_job(Codec<CycloElem>::context(*ctx));
    canon["representation"] = representation_to_json(rep);
    canon["options"] = opt.to_json();
    if (job.contains("hints")) canon["hints"] = hints_json(co.hints);
    return finish_rewrite(rep, cyclo_rewrite(rep, co), canon, seed);
  });
}

// ---------------------------------------------------------------------------
// hilbert90

template <class T>
CmdResult run_hilbert90(std::shared_ptr<const typename Codec<T>::Ctx> ctx, const Json& job, const JobOptions& opt,
                        Json& canon) {
  using C = Codec<T>;
  const Json& cj = require(job, "cocycle");
  std::vector<typename T::aut_type> gens;
  std::vector<unsigned> orders;
  std::vector<Matrix<T>> mats;
  for (const auto& g : get_array(require(cj, "generators"), "cocycle generators")) gens.push_back(C::parse_aut(*ctx, g));
  for (const auto& o : get_array(require(cj, "orders"), "cocycle orders")) orders.push_back(get_unsigned(o, "order"));
  for (const auto& m : get_array(require(cj, "matrices"), "cocycle matrices")) mats.push_back(matrix_from_json<T>(*ctx, m));
  if (mats.size() != gens.size()) malformed("one matrix is needed per cocycle generator");
  GroupPresentation<typename T::aut_type> pres(C::identity(*ctx), gens, orders);
  Cocycle<T> c;
  if (gens.empty()) {
    const unsigned d = get_unsigned(require(cj, "dimension"), "dimension");
    if (d == 0) malformed("dimension must be positive");
    c = trivial_cocycle<T>(pres, *ctx, d);
  } else {
    c = validate_and_close(pres, mats);
  }
  canon = base_job(C::context(*ctx));
  Json cc = cocycle_to_json(c);
  if (gens.empty()) cc["dimension"] = c.dim();
  canon["cocycle"] = std::move(cc);
  canon["options"] = opt.to_json();
  const auto res = solve_h90(c, H90Options{opt.strategy, opt.seed, opt.max_tries});
  Json d = envelope("hilbert90", canon, opt.seed);
  d["status"] = "ok";
  d["a"] = matrix_to_json(res.a);
  d["candidates"] = res.candidates;
  d["check"] = is_h90_solution(c, res.a) ? "C_g g(A) = A for every g in G: verified" : "FAILED";
  d["error"] = nullptr;
  return {Ok, emit(d), ""};
}

inline CmdResult cmd_hilbert90(const Json& job, const Overrides& ov = {}) {
  return guarded("hilbert90", job, [&](Json& canon, std::uint64_t& seed) -> CmdResult {
    const JobOptions opt = read_options(job, ov);
    seed = opt.seed;
    if (field_kind(job) == "finite")
      return run_hilbert90<FieldElem>(Codec<FieldElem>::parse_context(job["field"]), job, opt, canon);
    return run_hilbert90<CycloElem>(Codec<CycloElem>::parse_context(job["field"]), job, opt, canon);
  });
}

// ---------------------------------------------------------------------------
// normsolve and root (finite fields)

inline FieldCtxPtr finite_context(const Json& job) {
  if (field_kind(job) != "finite") malformed("this command needs a finite field");
  return std::const_pointer_cast<FieldCtx>(Codec<FieldElem>::parse_context(job["field"]));
}

inline std::string elem_text(const FieldElem& x) { return Codec<FieldElem>::elem(x).dump(); }

inline CmdResult cmd_normsolve(const Json& job, const Overrides& ov = {}) {
  return guarded("normsolve", job, [&](Json& canon, std::uint64_t& seed) -> CmdResult {
    const JobOptions opt = read_options(job, ov);
    seed = opt.seed;
    auto ctx = finite_context(job);
    const Json& ej = require(job, "equation");
    const unsigned k = ej.contains("subgroup_order") ? get_unsigned(ej["subgroup_order"], "subgroup_order") : ctx->m();
    const FieldElem target = Codec<FieldElem>::parse_elem(*ctx, require(ej, "target"));
    canon = base_job(Codec<FieldElem>::context(*ctx));
    canon["equation"] = {{"target", Codec<FieldElem>::elem(target)}, {"subgroup_order", k}};
    canon["options"] = opt.to_json();
    const NormEquation eq{ctx, k, target};
    const FieldElem mu = norm_solve(eq, opt.method, opt.seed, opt.max_tries);
    const FieldElem nm = norm(mu, k);
    if (!(nm == target)) throw Error(Errc::PreconditionViolated, "norm solver returned a non-solution");
    Json d = envelope("normsolve", canon, opt.seed);
    d["status"] = "ok";
    d["mu"] = Codec<FieldElem>::elem(mu);
    d["certificate_line"] = "N_" + std::to_string(k) + "(" + elem_text(mu) + ") = " + elem_text(nm) + " = target";
    d["error"] = nullptr;
    return {Ok, emit(d), ""};
  });
}

inline CmdResult cmd_root(const Json& job, const Overrides& ov = {}) {
  return guarded("root", job, [&](Json& canon, std::uint64_t& seed) -> CmdResult {
    const JobOptions opt = read_options(job, ov);
    seed = opt.seed;
    auto ctx = finite_context(job);
    const Json& rj = require(job, "root");
    const nt::u64 deg = rj.contains("degree") ? get_u64(rj["degree"], "degree") : ctx->q() - 1;
    const FieldElem target = Codec<FieldElem>::parse_elem(*ctx, require(rj, "target"));
    canon = base_job(Codec<FieldElem>::context(*ctx));
    canon["root"] = {{"target", Codec<FieldElem>::elem(target)}, {"degree", deg}};
    canon["options"] = opt.to_json();
    Json d = envelope("root", canon, opt.seed);
    try {
      const FieldElem mu = dth_root(target, deg);
      const FieldElem pw = mu.pow(deg);
      if (!(pw == target)) throw Error(Errc::PreconditionViolated, "root extraction returned a non-root");
      d["status"] = "ok";
      d["mu"] = Codec<FieldElem>::elem(mu);
      d["certificate_line"] = elem_text(mu) + "^" + std::to_string(deg) + " = " + elem_text(pw) + " = target";
      d["error"] = nullptr;
      return {Ok, emit(d), ""};
    } catch (const Error& e) {
      if (e.code() != Errc::NoRootExists) throw;
      d["status"] = "obstructed";
      d["mu"] = nullptr;
      d["error"] = error_json(e);
      return {Obstructed, emit(d), e.what()};
    }
  });
}

// ---------------------------------------------------------------------------
// stats

struct StatsParams {
  std::string kind = "random-X";  // random-X | scalar-lambda | structured | qm1 | normgcd | density
  nt::u64 p = 2;
  unsigned n = 2, d0 = 1;
  std::optional<std::vector<nt::u64>> modulus;
  unsigned d = 2;
  nt::u64 trials = 1000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool exhaustive = false;
  std::optional<std::vector<long long>> target;
  unsigned subgroup_order = 0;
};

inline FfMat random_invertible_matrix(const FieldCtx& ctx, std::size_t d, Rng& rng) {
  for (;;) {
    FfMat m(ctx, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = FieldElem::random(ctx, rng);
    if (is_invertible(m)) return m;
  }
}

/// One CSV row; the leading '#' line records the canonical inputs and seed.
inline CmdResult cmd_stats(const StatsParams& sp) {
  try {
    auto ctx = make_field(sp.p, sp.n, sp.d0, sp.modulus);
    Json inputs;
    inputs["field"] = Codec<FieldElem>::context(*ctx);
    inputs["kind"] = sp.kind;
    inputs["d"] = sp.d;
    inputs["trials"] = sp.trials;
    inputs["seed"] = sp.seed;
    inputs["exhaustive"] = sp.exhaustive;
    TrialReport r;
    if (sp.kind == "density") {
      const nt::u64 c = count_normal_elements(*ctx);
      r = make_report("density", ctx->size(), c, normal_basis_density(ctx->q(), ctx->m()).get_d());
      r.exhaustive = true;
      r.sigma3 = 0;
      r.d = 0;
      r.q = ctx->q();
      r.n = ctx->m();
      inputs["exhaustive"] = true;
    } else if (sp.kind == "qm1") {
      FieldElem lam = FieldElem::one(*ctx);
      if (sp.target) lam = FieldElem::from_coeffs(*ctx, *sp.target);
      inputs["target"] = Codec<FieldElem>::elem(lam);
      r = mc_qm1_success(lam, sp.trials, sp.seed, sp.jobs);
    } else if (sp.kind == "normgcd") {
      const unsigned k = sp.subgroup_order ? sp.subgroup_order : ctx->m();
      FieldElem t = FieldElem::one(*ctx);
      if (sp.target) t = FieldElem::from_coeffs(*ctx, *sp.target);
      inputs["target"] = Codec<FieldElem>::elem(t);
      inputs["subgroup_order"] = k;
      r = mc_norm_gcd_success(NormEquation{ctx, k, t}, sp.trials, sp.seed, sp.jobs);
    } else {
      const CandidateKind kind = parse_candidate(sp.kind);
      Rng rng(sp.seed, "stats.cocycle");
      const auto c = coboundary(full_group(*ctx), random_invertible_matrix(*ctx, sp.d, rng));
      r = sp.exhaustive ? exhaustive_invertibility(c, kind, sp.jobs)
                        : mc_invertibility(c, kind, sp.trials, sp.seed, sp.jobs);
    }
    std::string out = "# " + std::string(kFormatVersion) + " stats " + inputs.dump() + "\n";
    out += csv_header() + "\n" + csv_row(r) + "\n";
    return {Ok, out, ""};
  } catch (const Error& e) {
    return {Malformed, "", e.what()};
  }
}

// ---------------------------------------------------------------------------
// examples

/// Rewrite job for a worked family, in canonical form.
inline CmdResult cmd_examples(std::string_view family, unsigned n, unsigned m = 2, unsigned r = 0) {
  try {
    const auto ex = example_builder(parse_family(family), n, m, r);
    Json j = base_job(Codec<CycloElem>::context(*ex.ctx));
    j["example"] = {{"family", std::string(family_name(ex.family))}, {"n", ex.n}, {"m", ex.m}, {"r", ex.r}};
    j["representation"] = representation_to_json(ex.rep);
    j["options"] = JobOptions{}.to_json();
    return {Ok, emit(j), ""};
  } catch (const Error& e) {
    return {Malformed, "", e.what()};
  }
}

// ---------------------------------------------------------------------------
// verify

template <class T>
std::vector<std::string> verify_rewrite(std::shared_ptr<const typename Codec<T>::Ctx> ctx, const Json& doc) {
  const Json& job = require(doc, "job");
  auto rep = representation_from_json<T>(ctx, require(job, "representation"));
  std::vector<std::string> fails;
  DescentCertificate<T> cert;
  try {
    cert = certificate_from_json<T>(*ctx, require(doc, "certificate"));
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedInput) throw;
    return {std::string("certificate data inconsistent: ") + e.what()};
  }
  fails = verify_certificate(rep, cert).failures;
  if constexpr (std::is_same_v<T, CycloElem>) {
    if (!cert.written() && cert.obstruction && cert.obstruction->stage == ObstructionStage::NormUnsolvable) {
      const auto& ob = *cert.obstruction;
      if (!ob.scalar || ob.generator >= cert.auts.size()) {
        fails.push_back("norm obstruction lacks its scalar");
      } else {
        const auto sub = cyclic_closure(cert.auts[ob.generator]);
        try {
          if (conjugation_obstruction(*ctx, sub, ob.scalar->inverse()).verdict != ConjugationVerdict::Unsolvable)
            fails.push_back("no embedding makes the norm target negative");
        } catch (const Error& e) {
          fails.push_back(std::string("obstruction not recheckable: ") + e.what());
        }
        // lambda must be the twisted power product of an actual intertwiner.
        const auto dm = intertwiner(rep, cert.auts[ob.generator]);
        if (!dm || !(twisted_power_product(*dm, cert.auts[ob.generator], cert.orders[ob.generator]) ==
                     Matrix<T>::scalar(*ctx, rep.d, *ob.scalar)))
          fails.push_back("recorded lambda is not the twisted power product of the intertwiner");
      }
    }
  }
  return fails;
}

template <class T>
std::vector<std::string> verify_hilbert90(std::shared_ptr<const typename Codec<T>::Ctx> ctx, const Json& doc) {
  const Json& sub = require(doc, "job");
  // Rebuild the cocycle through the same validation path, then check A.
  const Json& cj = require(sub, "cocycle");
  std::vector<typename T::aut_type> gens;
  std::vector<unsigned> orders;
  std::vector<Matrix<T>> mats;
  for (const auto& g : get_array(require(cj, "generators"), "generators")) gens.push_back(Codec<T>::parse_aut(*ctx, g));
  for (const auto& o : get_array(require(cj, "orders"), "orders")) orders.push_back(get_unsigned(o, "order"));
  for (const auto& m : get_array(require(cj, "matrices"), "matrices")) mats.push_back(matrix_from_json<T>(*ctx, m));
  GroupPresentation<typename T::aut_type> pres(Codec<T>::identity(*ctx), gens, orders);
  const Cocycle<T> c = gens.empty() ? trivial_cocycle<T>(pres, *ctx, get_unsigned(require(cj, "dimension"), "dimension"))
                                    : validate_and_close(pres, mats);
  const Matrix<T> a = matrix_from_json<T>(*ctx, require(doc, "a"));
  if (a.rows() != c.dim() || a.cols() != c.dim()) return {"A has the wrong shape"};
  if (!is_h90_solution(c, a)) return {"A is singular or C_g g(A) != A for some g"};
  return {};
}

inline std::vector<std::string> verify_finite_equation(const Json& doc, bool is_root) {
  auto ctx = finite_context(require(doc, "job"));
  const Json& job = doc["job"];
  if (require(doc, "mu").is_null()) return {"no solution recorded"};
  const FieldElem mu = Codec<FieldElem>::parse_elem(*ctx, doc["mu"]);
  if (is_root) {
    const Json& rj = require(job, "root");
    const FieldElem t = Codec<FieldElem>::parse_elem(*ctx, require(rj, "target"));
    if (!(mu.pow(get_u64(require(rj, "degree"), "degree")) == t)) return {"mu^d != target"};
  } else {
    const Json& ej = require(job, "equation");
    const FieldElem t = Codec<FieldElem>::parse_elem(*ctx, require(ej, "target"));
    if (!(norm(mu, get_unsigned(require(ej, "subgroup_order"), "subgroup_order")) == t)) return {"N(mu) != target"};
  }
  return {};
}

/// Re-checks an output document from rewrite, hilbert90, normsolve or root
/// using only the data it contains.
inline CmdResult cmd_verify(const Json& doc) {
  try {
    const std::string command = require(doc, "command").get<std::string>();
    const Json& job = require(doc, "job");
    const std::string status = require(doc, "status").get<std::string>();
    std::vector<std::string> fails;
    if (status == "error" || status == "inconclusive") {
      fails.push_back("document records no result (status " + status + ")");
    } else if (command == "rewrite") {
      fails = field_kind(job) == "finite"
                  ? verify_rewrite<FieldElem>(Codec<FieldElem>::parse_context(job["field"]), doc)
                  : verify_rewrite<CycloElem>(Codec<CycloElem>::parse_context(job["field"]), doc);
      const std::string outcome = require(require(doc, "certificate"), "outcome").get<std::string>();
      if (outcome != status) fails.push_back("status disagrees with certificate outcome");
    } else if (command == "hilbert90") {
      fails = field_kind(job) == "finite"
                  ? verify_hilbert90<FieldElem>(Codec<FieldElem>::parse_context(job["field"]), doc)
                  : verify_hilbert90<CycloElem>(Codec<CycloElem>::parse_context(job["field"]), doc);
    } else if (command == "normsolve" || command == "root") {
      if (status == "obstructed") fails.push_back("an obstructed root claim cannot be verified from its output");
      else fails = verify_finite_equation(doc, command == "root");
    } else {
      malformed("cannot verify output of command '" + command + "'");
    }
    Json d;
    d["version"] = kFormatVersion;
    d["command"] = "verify";
    d["verified_command"] = command;
    d["status"] = fails.empty() ? "verified" : "rejected";
    d["failures"] = fails;
    return {fails.empty() ? Ok : Malformed, emit(d), fails.empty() ? "" : "rejected: " + fails.front()};
  } catch (const Error& e) {
    return {Malformed, "", e.what()};
  } catch (const nlohmann::json::exception& e) {
    return {Malformed, "", std::string("MalformedInput: ") + e.what()};
  }
}

/// Dispatch for the job-file subcommands.
inline CmdResult run_job(std::string_view command, const std::string& text, const Overrides& ov = {}) {
  Json doc;
  try {
    doc = parse_document(text);
  } catch (const Error& e) {
    return {Malformed, "", e.what()};
  }
  if (command == "rewrite") return cmd_rewrite(doc, ov);
  if (command == "hilbert90") return cmd_hilbert90(doc, ov);
  if (command == "normsolve") return cmd_normsolve(doc, ov);
  if (command == "root") return cmd_root(doc, ov);
  if (command == "verify") return cmd_verify(doc);
  return {Malformed, "", "unknown command '" + std::string(command) + "'"};
}

}  // namespace galdesc::cli
