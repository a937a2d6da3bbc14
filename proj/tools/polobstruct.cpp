// polobstruct: construct and verify the twisted cyclotomic data, and
// evaluate the polarization-kernel calculus on model files.

#include "polobstruct/polobstruct.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

using namespace polobstruct;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

long checked_prime(long p) {
  if (!is_odd_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not an odd prime");
  return p;
}

// --seed, then POLOBSTRUCT_SEED, then the built-in default.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("POLOBSTRUCT_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t s = std::stoull(env, &used);
      if (used == std::string(env).size()) return s;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("POLOBSTRUCT_SEED is not a nonnegative integer: ") + env);
  }
  return kDefaultSeed;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json factors_json(const AbGroupPresentation& g) {
  Json f = Json::array();
  for (const auto& d : g.nontrivial_factors()) f.push_back(integer_to_json(d));
  return Json{{"invariant_factors", f}, {"group", g.to_string()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of a twisted cyclotomic construction and its polarization obstruction"};
  app.require_subcommand(1);

  long p = 0;
  std::string out_dir = ".";
  auto* construct = app.add_subcommand("construct", "write zeta.json and b.json for p");
  construct->add_option("-p", p, "odd prime")->required();
  construct->add_option("--out", out_dir, "output directory");

  std::optional<std::uint64_t> seed;
  auto* verify = app.add_subcommand("verify", "run the verification suite for p and print a JSON report");
  verify->add_option("-p", p, "odd prime")->required();
  verify->add_option("--seed", seed,
                     "seed for randomized checks (default: POLOBSTRUCT_SEED, else " + std::to_string(kDefaultSeed) + ")");

  std::string n_text;
  auto* parity = app.add_subcommand("parity", "E[p]-rank of a polarization of degree p^2 n^4");
  parity->add_option("-p", p, "odd prime")->required();
  parity->add_option("-n", n_text, "positive integer")->required();

  std::string element;
  auto* norm = app.add_subcommand("norm", "norm to Q of an element 'p; c0, c1, ...'");
  norm->add_option("element", element, "element of Q(zeta_p) in the power basis")->required();
  auto* tp = app.add_subcommand("tp", "total positivity of a real element 'p; c0, c1, ...'");
  tp->add_option("element", element, "element of Q(zeta_p) fixed by complex conjugation")->required();

  std::string model_path;
  auto* bgroup = app.add_subcommand("bgroup", "invariant factors of B1 and B2 for a model");
  bgroup->add_option("--model", model_path, "model JSON file")->required();

  std::string class_text;
  auto* attain = app.add_subcommand("attainable", "whether a kernel class is attainable in a model");
  attain->add_option("--model", model_path, "model JSON file")->required();
  attain->add_option("--class", class_text, "class coefficients 'c0,c1,...'")->required();

  long pmax = 0;
  unsigned jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV summary for every odd prime up to --pmax");
  sweep_cmd->add_option("--pmax", pmax, "largest prime")->required();
  sweep_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*construct) {
      checked_prime(p);
      const TwistData t = TwistData::build(p);
      std::filesystem::create_directories(out_dir);
      const auto zpath = (std::filesystem::path(out_dir) / "zeta.json").string();
      const auto bpath = (std::filesystem::path(out_dir) / "b.json").string();
      write_matrix(zpath, t.zeta);
      write_matrix(bpath, t.b);
      print(Json{{"p", p}, {"zeta", zpath}, {"b", bpath}});
      return kPass;
    }
    if (*verify) {
      checked_prime(p);
      const VerifyReport r = run_verify_suite(p, resolve_seed(seed));
      print(r.to_json());
      return r.pass() ? kPass : kFail;
    }
    if (*parity) {
      checked_prime(p);
      Integer n;
      try {
        n = parse_integer(n_text);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      if (n <= 0) throw UsageError("n must be positive");
      const ParityResult r = polarization_parity(p, n);
      print(Json{{"p", p},
                 {"n", integer_to_json(n)},
                 {"degree", integer_to_json(r.degree)},
                 {"e_rank", r.rank.value},
                 {"parity", r.rank.odd() ? "odd" : "even"}});
      return kPass;
    }
    if (*norm || *tp) {
      CycElem a = CycElem::scalar(3, Rational(0));
      try {
        a = parse_cyc_elem(element);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      if (*norm) {
        print(Json{{"p", a.prime()}, {"norm", rational_to_json(norm_to_Q(a))}, {"integral", a.is_integral()}});
        return kPass;
      }
      if (a.is_zero()) throw UsageError("total positivity is undefined for 0");
      if (complex_conj(a) != a) throw UsageError("element is not fixed by complex conjugation");
      const RealElem x = restrict_to_real(a);
      Json coords = Json::array();
      for (const auto& c : x.coords()) coords.push_back(rational_to_json(c));
      print(Json{{"p", a.prime()}, {"eta_coords", coords}, {"totally_positive", is_totally_positive(x)}});
      return kPass;
    }
    if (*bgroup) {
      const ModelDescriptor m = read_model(model_path);
      const BGroups g = compute_b_groups(m);
      Json j;
      j["b1"] = factors_json(g.b1);
      j["b2"] = factors_json(g.b2);
      j["phi_samples"] = Json{{"total", m.phi_samples.size()}, {"in_r1", g.r1_samples}, {"in_r2", g.r2_samples}};
      if (const auto q = m.cyclotomic_prime())
        j["i_c_parity"] = parity_hom(m.s_c.front(), m.labels, *q);
      else
        j["i_c_parity"] = nullptr;
      print(j);
      return kPass;
    }
    if (*attain) {
      const ModelDescriptor m = read_model(model_path);
      KerClass c;
      try {
        c = parse_class(class_text);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      if (c.size() != m.labels.size())
        throw UsageError("class has " + std::to_string(c.size()) + " coefficients, model has " +
                         std::to_string(m.labels.size()) + " labels");
      const Attainability a = attainable(c, m);
      print(Json{{"class", c.to_string()}, {"attainable", a.attainable ? "yes" : "no"}, {"reason", a.reason}});
      return kPass;
    }
    if (*sweep_cmd) {
      if (pmax < 3) throw UsageError("--pmax must be at least 3");
      std::cout << sweep_csv(sweep(pmax, jobs));
      return kPass;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
