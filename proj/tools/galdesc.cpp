#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <thread>

#include "galdesc/cli.hpp"

namespace fs = std::filesystem;
using namespace galdesc;
using namespace galdesc::cli;

namespace {

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MalformedInput, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MalformedInput, "cannot write " + path);
  out << text;
}

int report(const CmdResult& r, const std::string& output) {
  if (!r.output.empty()) write_text(output, r.output);
  if (!r.diagnostic.empty()) std::cerr << "galdesc: " << r.diagnostic << "\n";
  return r.exit_code;
}

struct Common {
  std::vector<std::string> inputs;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> max_tries, split_m;
  std::optional<std::string> strategy, presentation, method;
  unsigned jobs = 1;

  Overrides overrides() const { return {seed, max_tries, strategy, presentation, method, split_m}; }
};

void add_common(CLI::App* app, Common& c, bool input_required) {
  auto* in = app->add_option("-i,--input", c.inputs, "job file(s); '-' reads stdin");
  if (input_required) in->required();
  app->add_option("-o,--output", c.output, "output file, or a directory when several inputs are given");
  app->add_option("--seed", c.seed, "overrides options.seed");
  app->add_option("--max-tries", c.max_tries, "overrides options.max_tries");
  app->add_option("--strategy", c.strategy, "deterministic | scalar | structured | random");
  app->add_option("--presentation", c.presentation, "single-generator | coprime-pair");
  app->add_option("--split-m", c.split_m, "coprime-pair: order of the first generator");
  app->add_option("--method", c.method, "norm solver: gcd | order");
  app->add_option("--jobs", c.jobs, "job files processed concurrently")->check(CLI::Range(1u, 256u));
}

/// Runs one command over every input file, `jobs` at a time.
int run_batch(std::string_view command, const Common& c) {
  if (c.inputs.size() == 1) {
    CmdResult r;
    try {
      r = run_job(command, read_text(c.inputs[0]), c.overrides());
    } catch (const Error& e) {
      r = {Malformed, "", e.what()};
    }
    return report(r, c.output);
  }
  if (c.output.empty() || !fs::is_directory(c.output)) {
    std::cerr << "galdesc: several inputs need --output naming an existing directory\n";
    return Malformed;
  }
  std::vector<CmdResult> results(c.inputs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(c.jobs, c.inputs.size()); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < c.inputs.size();) {
        try {
          results[i] = run_job(command, read_text(c.inputs[i]), c.overrides());
        } catch (const Error& e) {
          results[i] = {Malformed, "", e.what()};
        }
      }
    });
  for (auto& th : pool) th.join();
  int worst = Ok;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const fs::path out = fs::path(c.output) / (fs::path(c.inputs[i]).stem().string() + "." + std::string(command) + ".json");
    if (!results[i].diagnostic.empty()) std::cerr << "galdesc: " << c.inputs[i] << ": " << results[i].diagnostic << "\n";
    if (!results[i].output.empty()) write_text(out.string(), results[i].output);
    worst = std::max(worst, results[i].exit_code);
  }
  return worst;
}

/// normsolve / root jobs may come from flags instead of a file.
struct EquationFlags {
  nt::u64 p = 0;
  unsigned n = 1, d0 = 1;
  std::string modulus, target;
  std::optional<nt::u64> degree;
  std::optional<unsigned> subgroup_order;
};

void add_field_flags(CLI::App* app, nt::u64* p, unsigned& n, unsigned& d0, std::string& modulus) {
  app->add_option("--p", *p, "characteristic");
  app->add_option("--n", n, "degree of E over GF(p)");
  app->add_option("--d0", d0, "degree of F over GF(p)");
  app->add_option("--modulus", modulus, "monic modulus as a JSON list, low degree first");
}

Json equation_job(std::string_view command, const EquationFlags& f) {
  Json field{{"kind", "finite"}, {"p", f.p}, {"n", f.n}, {"d0", f.d0}};
  if (!f.modulus.empty()) field["modulus"] = Json::parse(f.modulus);
  Json job{{"version", kFormatVersion}, {"field", field}};
  const Json target = f.target.empty() ? Json(1) : Json::parse(f.target);
  if (command == "root") {
    job["root"] = {{"target", target}};
    if (f.degree) job["root"]["degree"] = *f.degree;
  } else {
    job["equation"] = {{"target", target}};
    if (f.subgroup_order) job["equation"]["subgroup_order"] = *f.subgroup_order;
  }
  return job;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rewrite matrix representations over the fixed field of a Galois group"};
  app.require_subcommand(1);

  Common rw, h9, ver;
  auto* c_rewrite = app.add_subcommand("rewrite", "conjugate a representation into the fixed field");
  add_common(c_rewrite, rw, true);
  auto* c_h90 = app.add_subcommand("hilbert90", "solve C_g = A g(A)^-1 for a cocycle");
  add_common(c_h90, h9, true);
  auto* c_verify = app.add_subcommand("verify", "re-check an output document");
  add_common(c_verify, ver, true);

  Common ns, rt;
  EquationFlags nsf, rtf;
  auto* c_norm = app.add_subcommand("normsolve", "solve N(mu) = target");
  add_common(c_norm, ns, false);
  add_field_flags(c_norm, &nsf.p, nsf.n, nsf.d0, nsf.modulus);
  c_norm->add_option("--target", nsf.target, "target element as JSON");
  c_norm->add_option("--subgroup-order", nsf.subgroup_order, "|A|; defaults to [E:F]");
  auto* c_root = app.add_subcommand("root", "solve mu^d = target");
  add_common(c_root, rt, false);
  add_field_flags(c_root, &rtf.p, rtf.n, rtf.d0, rtf.modulus);
  c_root->add_option("--target", rtf.target, "target element as JSON");
  c_root->add_option("--degree", rtf.degree, "d; defaults to q-1");

  StatsParams sp;
  std::string st_mod, st_target, st_out;
  auto* c_stats = app.add_subcommand("stats", "Monte Carlo or exhaustive success rates as CSV");
  c_stats->add_option("--kind", sp.kind, "random-X | scalar-lambda | structured | qm1 | normgcd | density");
  add_field_flags(c_stats, &sp.p, sp.n, sp.d0, st_mod);
  c_stats->add_option("--degree", sp.d, "matrix dimension d");
  c_stats->add_option("--trials", sp.trials, "Monte Carlo trials");
  c_stats->add_option("--seed", sp.seed, "base seed");
  c_stats->add_option("--jobs", sp.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  c_stats->add_flag("--exhaustive", sp.exhaustive, "enumerate every candidate instead of sampling");
  c_stats->add_option("--target", st_target, "qm1 / normgcd target as JSON");
  c_stats->add_option("--subgroup-order", sp.subgroup_order, "normgcd: |A|");
  c_stats->add_option("-o,--output", st_out, "output file");

  std::string fam, ex_out;
  unsigned ex_n = 1, ex_m = 2, ex_r = 0;
  auto* c_ex = app.add_subcommand("examples", "emit a rewrite job for a worked family");
  c_ex->add_option("family", fam, "dicyclic | semidihedral-like | metacyclic")->required();
  c_ex->add_option("n", ex_n, "family parameter")->required();
  c_ex->add_option("--m", ex_m, "metacyclic: order of the twisting automorphism");
  c_ex->add_option("--r", ex_r, "metacyclic: exponent of order m modulo n");
  c_ex->add_option("-o,--output", ex_out, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_rewrite->parsed()) return run_batch("rewrite", rw);
    if (c_h90->parsed()) return run_batch("hilbert90", h9);
    if (c_verify->parsed()) return run_batch("verify", ver);
    for (auto [sub, common, flags] : {std::tuple{c_norm, &ns, &nsf}, std::tuple{c_root, &rt, &rtf}}) {
      if (!sub->parsed()) continue;
      const std::string name = sub->get_name();
      if (!common->inputs.empty()) return run_batch(name, *common);
      if (flags->p == 0) {
        std::cerr << "galdesc: " << name << " needs --input or --p\n";
        return Malformed;
      }
      Json job;
      try {
        job = equation_job(name, *flags);
      } catch (const nlohmann::json::exception& e) {
        std::cerr << "galdesc: MalformedInput: " << e.what() << "\n";
        return Malformed;
      }
      return report(name == "root" ? cmd_root(job, common->overrides()) : cmd_normsolve(job, common->overrides()),
                    common->output);
    }
    if (c_stats->parsed()) {
      try {
        if (!st_mod.empty()) sp.modulus = Json::parse(st_mod).get<std::vector<nt::u64>>();
        if (!st_target.empty()) {
          const Json t = Json::parse(st_target);
          sp.target = t.is_array() ? t.get<std::vector<long long>>() : std::vector<long long>{t.get<long long>()};
        }
      } catch (const nlohmann::json::exception& e) {
        std::cerr << "galdesc: MalformedInput: " << e.what() << "\n";
        return Malformed;
      }
      return report(cmd_stats(sp), st_out);
    }
    if (c_ex->parsed()) return report(cmd_examples(fam, ex_n, ex_m, ex_r), ex_out);
  } catch (const Error& e) {
    std::cerr << "galdesc: " << e.what() << "\n";
    return Malformed;
  }
  return Malformed;
}
