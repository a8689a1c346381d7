// schatten-widths: command-line front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "schatten_widths/schatten_widths.h"

namespace {

using nlohmann::json;

// Usage and input problems share exit code 1; internal faults report as numerical.
int exit_code(sw_status s) {
  switch (s) {
    case SW_OK: return 0;
    case SW_ERR_USAGE:
    case SW_ERR_INPUT: return 1;
    case SW_ERR_VERIFICATION: return 3;
    default: return 2;
  }
}

struct Failure {
  sw_status status;
  std::string message;
};

void check(sw_status s) {
  if (s != SW_OK) throw Failure{s, sw_last_error()};
}

double parse_exponent(const std::string& text) {
  double v = 0.0;
  check(sw_parse_exponent(text.c_str(), &v));
  return v;
}

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure{SW_ERR_INPUT, "cannot write '" + path + "'"};
  f << text;
  if (!f) throw Failure{SW_ERR_INPUT, "failed writing '" + path + "'"};
}

struct Common {
  int threads = 0;
  std::uint64_t seed = 0;
  std::string out;
};

class Result {
 public:
  Result() = default;
  Result(const Result&) = delete;
  Result& operator=(const Result&) = delete;
  ~Result() { sw_result_free(r_); }
  sw_result** slot() { return &r_; }
  const sw_result* get() const { return r_; }

 private:
  sw_result* r_ = nullptr;
};

// Every flag of the subcommand with its effective value. --threads and --out
// are left out so the embedded manifest depends only on what is computed.
json flag_map(const CLI::App* sub) {
  json flags = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "threads" || name == "out") continue;
    if (opt->get_expected_max() == 0) {
      flags[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      std::string joined;
      for (const auto& v : opt->results()) joined += (joined.empty() ? "" : ",") + v;
      flags[name] = joined;
    } else if (!opt->get_default_str().empty()) {
      flags[name] = opt->get_default_str();
    }
  }
  return flags;
}

int deliver(const CLI::App* sub, const Common& c, const Result& r, const std::string& started) {
  if (c.out.empty()) {
    std::cout << sw_result_csv(r.get()) << std::flush;
  } else {
    json doc;
    doc["manifest"] = {{"command", sub->get_name()},
                       {"flags", flag_map(sub)},
                       {"seed", c.seed},
                       {"version", sw_version()}};
    doc["result"] = json::parse(sw_result_json(r.get()));
    const std::string text = doc.dump(2) + "\n";
    write_file(c.out, text);
    json side = doc["manifest"];
    side["started"] = started;
    side["finished"] = utc_now();
    side["threads"] = sw_threads();
    side["outputs"] = json::array({{{"path", c.out}, {"sha256", sha256_hex(text)}}});
    write_file(c.out + ".manifest.json", side.dump(2) + "\n");
  }
  return sw_result_passed(r.get()) ? 0 : 3;
}

void add_common(CLI::App* sub, Common& c, bool seeded) {
  sub->add_option("--threads", c.threads, "Worker count (SCHATTEN_WIDTHS_THREADS takes precedence)")
      ->check(CLI::NonNegativeNumber);
  if (seeded) sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  sub->add_option("--out", c.out, "Write JSON with an embedded manifest to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schatten-class norms, Gelfand and Kolmogorov widths, and asymptotic envelopes",
               "schatten-widths"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sw_version()));
  Common c;
  std::function<sw_status(Result&)> run;

  // norms
  std::string file, p_text = "2", q_text, target_text = "2";
  auto* norms = app.add_subcommand("norms", "Schatten and mixed norms of a matrix file");
  norms->add_option("--file", file, "Matrix file")->required();
  norms->add_option("--p", p_text, "Exponent in (0, inf]")->capture_default_str();
  add_common(norms, c, false);
  norms->callback([&] {
    run = [&](Result& r) {
      sw_matrix* m = nullptr;
      check(sw_matrix_read_file(file.c_str(), &m));
      const sw_status s = sw_norms(m, parse_exponent(p_text), r.slot());
      sw_matrix_free(m);
      return s;
    };
  });

  // flat-top
  sw_flat_top_args ft{0, 1, 0, 0, 1e-8};
  auto* flat = app.add_subcommand("flat-top", "Flat-top certificate in a seeded random subspace");
  flat->add_option("--N", ft.order, "Matrix order")->required();
  flat->add_option("--k", ft.k, "Multiplicity")->required();
  flat->add_option("--dim", ft.dim, "Subspace dimension (0: kappa(k))")->capture_default_str();
  flat->add_option("--tol", ft.tol, "Residual tolerance")->capture_default_str();
  add_common(flat, c, true);
  flat->callback([&] {
    run = [&](Result& r) {
      ft.seed = c.seed;
      return sw_flat_top(&ft, r.slot());
    };
  });

  // gelfand
  sw_gelfand_args ga{0, 0, 0, 0, 64, 50, 0, 0};
  bool profile = false;
  auto* gel = app.add_subcommand("gelfand", "Heuristic Gelfand number of S_p -> S_q");
  gel->add_option("--p", p_text, "Domain exponent")->required();
  gel->add_option("--q", q_text, "Target exponent")->required();
  gel->add_option("--N", ga.order, "Matrix order")->required();
  auto* gel_n = gel->add_option("--n", ga.n, "Index n in [1, N^2]");
  gel->add_flag("--profile", profile, "Every n = 1..N^2, nonincreasing")->excludes(gel_n);
  gel->add_option("--restarts", ga.restarts, "Inner restarts")->capture_default_str();
  gel->add_option("--outer-iters", ga.outer_iters, "Outer refinement steps")->capture_default_str();
  add_common(gel, c, true);
  gel->callback([&] {
    if (!profile && ga.n == 0) throw CLI::ValidationError("--n", "needs --n or --profile");
    run = [&](Result& r) {
      ga.p = parse_exponent(p_text);
      ga.q = parse_exponent(q_text);
      ga.seed = c.seed;
      ga.profile = profile;
      return sw_gelfand(&ga, r.slot());
    };
  });

  // kolmogorov
  sw_kolmogorov_args ka{SW_SET_VASILEVA, 0, 1, 0, SW_TARGET_SCHATTEN, 2.0, 1, 50, 0};
  std::string set_name, target_kind = "schatten";
  auto* kol = app.add_subcommand("kolmogorov", "Heuristic Kolmogorov width of a finite test set");
  kol->add_option("--set", set_name, "Test set")->required()->check(CLI::IsMember({"vasileva", "averaged"}));
  kol->add_option("--N", ka.order, "Matrix order")->required();
  kol->add_option("--r", ka.r, "Rank of the averaged diagonal")->capture_default_str();
  kol->add_option("--samples", ka.samples, "Averaged set sample count (0: enumerate)")->capture_default_str();
  kol->add_option("--target", target_text, "Target norm exponent s >= 1")->capture_default_str();
  kol->add_option("--target-kind", target_kind, "schatten or mixed")
      ->capture_default_str()
      ->check(CLI::IsMember({"schatten", "mixed"}));
  kol->add_option("--n", ka.n, "Width index")->required();
  kol->add_option("--outer-iters", ka.outer_iters, "Outer refinement steps")->capture_default_str();
  add_common(kol, c, true);
  kol->callback([&] {
    run = [&](Result& r) {
      ka.set = set_name == "averaged" ? SW_SET_AVERAGED : SW_SET_VASILEVA;
      ka.target_kind = target_kind == "mixed" ? SW_TARGET_MIXED : SW_TARGET_SCHATTEN;
      ka.target = parse_exponent(target_text);
      ka.seed = c.seed;
      return sw_kolmogorov(&ka, r.slot());
    };
  });

  // orthocheck
  int oc_order = 0, oc_r = 0;
  auto* oc = app.add_subcommand("orthocheck", "Orthogonality identity of the averaged set");
  oc->add_option("--N", oc_order, "Matrix order")->required();
  oc->add_option("--r", oc_r, "Rank")->required();
  add_common(oc, c, false);
  oc->callback([&] { run = [&](Result& r) { return sw_orthocheck(oc_order, oc_r, r.slot()); }; });

  // gaussian
  sw_gaussian_args gs{0, 0, 2000, 0};
  auto* gau = app.add_subcommand("gaussian", "Monte Carlo mean of the S_q norm of a Gaussian matrix");
  gau->add_option("--N", gs.order, "Matrix order")->required();
  gau->add_option("--q", q_text, "Exponent")->required();
  gau->add_option("--trials", gs.trials, "Trials")->capture_default_str();
  add_common(gau, c, true);
  gau->callback([&] {
    run = [&](Result& r) {
      gs.q = parse_exponent(q_text);
      gs.seed = c.seed;
      return sw_gaussian(&gs, r.slot());
    };
  });

  // dvoretzky
  sw_dvoretzky_args dv{0, 0, 0, 200, 0, 0.1};
  auto* dvo = app.add_subcommand("dvoretzky", "Norm ratios on random subspaces");
  dvo->add_option("--N", dv.order, "Matrix order")->required();
  dvo->add_option("--q", q_text, "Exponent")->required();
  dvo->add_option("--k", dv.k, "Subspace dimension (0: critical dimension)")->capture_default_str();
  dvo->add_option("--trials", dv.trials, "Trials")->capture_default_str();
  dvo->add_option("--cfg-crit-frac", dv.crit_frac, "Critical-dimension fraction")->capture_default_str();
  add_common(dvo, c, true);
  dvo->callback([&] {
    run = [&](Result& r) {
      dv.q = parse_exponent(q_text);
      dv.seed = c.seed;
      return sw_dvoretzky(&dv, r.slot());
    };
  });

  // envelope and phase-diagram
  sw_envelope_config cfg = sw_envelope_default_config();
  int env_order = 0, env_n = 0;
  auto add_cfg = [&](CLI::App* sub) {
    sub->add_option("--cfg-small-frac", cfg.small_codim_fraction, "Small-codimension fraction")
        ->capture_default_str();
    sub->add_option("--cfg-crit-frac", cfg.critical_dim_fraction, "Critical-dimension fraction")
        ->capture_default_str();
  };
  auto* env = app.add_subcommand("envelope", "Asymptotic rate and regime of c_n(S_p -> S_q)");
  env->add_option("--p", p_text, "Domain exponent")->required();
  env->add_option("--q", q_text, "Target exponent")->required();
  env->add_option("--N", env_order, "Matrix order")->required();
  env->add_option("--n", env_n, "Index n in [1, N^2]")->required();
  add_cfg(env);
  add_common(env, c, false);
  env->callback([&] {
    run = [&](Result& r) {
      return sw_envelope(parse_exponent(p_text), parse_exponent(q_text), env_order, env_n, &cfg, r.slot());
    };
  });

  std::string p_grid, q_grid, n_grid;
  auto* phase = app.add_subcommand("phase-diagram", "Envelope rows over (p, q, n) grids");
  phase->add_option("--N", env_order, "Matrix order")->required();
  phase->add_option("--p-grid", p_grid, "Comma-separated exponents (default grid if omitted)");
  phase->add_option("--q-grid", q_grid, "Comma-separated exponents (default grid if omitted)");
  phase->add_option("--n-grid", n_grid, "Comma-separated n values (default 1..N^2)");
  add_cfg(phase);
  add_common(phase, c, false);
  phase->callback([&] {
    run = [&](Result& r) {
      std::vector<double> grid(sw_default_exponent_grid(nullptr, 0));
      sw_default_exponent_grid(grid.data(), grid.size());
      auto exponents = [&](const std::string& list) {
        if (list.empty()) return grid;
        std::vector<double> out;
        for (const auto& item : split(list)) out.push_back(parse_exponent(item));
        return out;
      };
      const std::vector<double> ps = exponents(p_grid), qs = exponents(q_grid);
      std::vector<int> ns;
      if (n_grid.empty()) {
        for (int n = 1; n <= env_order * env_order; ++n) ns.push_back(n);
      } else {
        for (const auto& item : split(n_grid)) {
          try {
            ns.push_back(std::stoi(item));
          } catch (const std::exception&) {
            throw Failure{SW_ERR_USAGE, "bad n value '" + item + "'"};
          }
        }
      }
      return sw_phase_diagram(ps.data(), ps.size(), qs.data(), qs.size(), env_order, ns.data(), ns.size(),
                              &cfg, r.slot());
    };
  });

  // verify
  std::string suite = "primary", mutate;
  std::vector<int> criteria;
  auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
  ver->add_option("--suite", suite, "Suite name")->capture_default_str()->check(CLI::IsMember({"primary"}));
  ver->add_option("--criteria", criteria, "Subset of criterion ids 1..13")->delimiter(',');
  ver->add_option("--mutate", mutate, "Deliberately break a formula (kappa) to exercise the suite")
      ->check(CLI::IsMember({"kappa"}));
  add_common(ver, c, false);
  ver->callback([&] {
    run = [&](Result& r) {
      sw_verify_args va{criteria.data(), criteria.size(), mutate == "kappa", nullptr, nullptr};
      va.on_line = [](const char* line, void*) { std::cerr << line << '\n' << std::flush; };
      return sw_verify(&va, r.slot());
    };
  });

  if (argc > 1 && argv[1][0] != '-') {
    bool known = false;
    for (const CLI::App* sub : app.get_subcommands({})) known = known || sub->get_name() == argv[1];
    if (!known) {
      std::cerr << "error: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
      return 1;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  if (std::getenv("SCHATTEN_WIDTHS_THREADS") == nullptr && c.threads > 0) sw_set_threads(c.threads);

  const CLI::App* sub = app.get_subcommands().front();
  const std::string started = utc_now();
  try {
    Result r;
    check(run(r));
    return deliver(sub, c, r, started);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
