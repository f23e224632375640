// bgb: double-coset census for GL_n over finite chain rings.
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "bgb/json_io.hpp"

namespace {

using bgb::io::json;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw bgb::error("cannot open output file " + out_path);
    f << text;
  }
}

struct CommonArgs {
  std::string ring_spec;
  std::string format = "human";
  std::string out;
  long long budget = 2'000'000;
  int threads = 1;
  uint64_t seed = 0x5eed5eed;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_ring) {
  if (needs_ring)
    cmd->add_option("--ring", a.ring_spec, "ring spec, e.g. zpk:p=2,k=3 or fqtk:q=3,k=2")
        ->required();
  cmd->add_option("--format", a.format, "output format: human, json or csv")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  cmd->add_option("--out", a.out, "write output to a file instead of stdout");
  cmd->add_option("--budget", a.budget, "largest admissible flag-space size");
  cmd->add_option("--threads", a.threads, "worker threads for orbit closure");
  cmd->add_option("--seed", a.seed, "seed for randomized property checks");
}

bgb::OracleOpts oracle_opts(const CommonArgs& a) { return {a.budget, a.threads}; }

int cmd_count(const CommonArgs& a, int n, const std::string& method) {
  bgb::Ring ring = bgb::Ring::parse(a.ring_spec);
  long long count = 0;
  std::string used = method;
  if (method == "closed" || (method == "auto" && n <= 3)) {
    used = "closed";
    if (n == 1)
      count = 1;
    else if (n == 2)
      count = bgb::count_n2(ring.k());
    else if (n == 3)
      count = static_cast<long long>(bgb::count_n3(ring.q(), ring.k()));
    else
      throw bgb::error("closed-form counts cover n <= 3 only");
  } else {
    used = "oracle";
    count = bgb::double_cosets(ring, n, oracle_opts(a)).num_cosets();
  }
  if (a.format == "json")
    emit(json{{"ring", ring.to_string()}, {"n", n}, {"count", count}, {"method", used}}.dump(2),
         a.out);
  else
    emit(std::to_string(count), a.out);
  return 0;
}

int cmd_enumerate(const CommonArgs& a, int n) {
  bgb::Ring ring = bgb::Ring::parse(a.ring_spec);
  if (n == 2 || n == 3) {
    // per-stratum census rows for the csv format
    std::map<std::string, long long> strata;
    json items = json::array();
    std::string text;
    auto add = [&](const json& label_j, const bgb::Mat& rep) {
      items.push_back(json{{"label", label_j}, {"representative", rep.to_string()}});
      text += rep.to_string() + "\n";
      std::string stratum = label_j["payload"].contains("stratum")
                                ? label_j["payload"]["stratum"].get<std::string>()
                                : "-";
      strata[label_j["fiber"].get<std::string>() + "," + stratum]++;
    };
    if (n == 2) {
      for (int r = 0; r <= ring.k(); ++r)
        add(bgb::io::label_json(bgb::N2Label{r}), bgb::rep_n2(ring, bgb::N2Label{r}));
    } else {
      for (const bgb::N3Label& label : bgb::enumerate_labels_n3(ring))
        add(bgb::io::label_json(label), bgb::rep_of_label(ring, label));
    }
    if (a.format == "csv") {
      std::string csv = "ring,n,fiber,stratum,count\n";
      for (const auto& [key, cnt] : strata)
        csv += ring.to_string() + "," + std::to_string(n) + "," + key + "," +
               std::to_string(cnt) + "\n";
      emit(csv, a.out);
    } else {
      emit(a.format == "json" ? items.dump(2) : text, a.out);
    }
    return 0;
  }
  bgb::OrbitReport rep = bgb::double_cosets(ring, n, oracle_opts(a));
  if (a.format == "json") {
    emit(bgb::io::report_json(rep).dump(2), a.out);
  } else {
    std::string text;
    for (const bgb::Mat& m : rep.representatives) text += m.to_string() + "\n";
    emit(text, a.out);
  }
  return 0;
}

int cmd_invariants(const CommonArgs& a, const std::string& matrix) {
  bgb::Ring ring = bgb::Ring::parse(a.ring_spec);
  bgb::Mat m = bgb::Mat::parse(ring, matrix);
  json j = bgb::io::invariants_json(m);
  if (a.format == "human") {
    std::string text = "W = " + bgb::permutation_invariant(m).to_string() + "\n" +
                       "r = " + bgb::intersection_numbers(m).to_string() + "\n" +
                       "profile = " + j["profile"].dump() + "\n";
    emit(text, a.out);
  } else {
    emit(j.dump(2), a.out);
  }
  return 0;
}

int cmd_equiv(const CommonArgs& a, const std::string& ma, const std::string& mb, int n) {
  bgb::Ring ring = bgb::Ring::parse(a.ring_spec);
  bgb::Mat left = bgb::Mat::parse(ring, ma), right = bgb::Mat::parse(ring, mb);
  if (n > 0 && (left.rows() != n || right.rows() != n))
    throw bgb::parse_error("--n does not match the parsed matrix shapes");
  bool eq = bgb::equiv(left, right, oracle_opts(a));
  emit(eq ? "true" : "false", a.out);
  return 0;
}

int cmd_canonical(const CommonArgs& a, const std::string& matrix) {
  bgb::Ring ring = bgb::Ring::parse(a.ring_spec);
  emit(bgb::canonical_flag(bgb::Mat::parse(ring, matrix)).to_string(), a.out);
  return 0;
}

int cmd_verify(const CommonArgs& a, const std::string& suite) {
  bgb::VerifyOpts v;
  v.oracle = oracle_opts(a);
  v.seed = a.seed;
  std::vector<bgb::CriterionResult> results;
  bool all_ok = true;
  for (int id : bgb::criteria_for_suite(suite)) {
    bgb::CriterionResult r = bgb::run_criterion(id, v);
    all_ok = all_ok && r.passed;
    char line[160];
    std::snprintf(line, sizeof(line), "criterion %d [%s]: %s (%.1fs)", r.id, r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.seconds);
    std::cout << line << "\n";
    if (!r.passed || a.format == "human")
      for (const std::string& note : r.notes) std::cout << "  " << note << "\n";
    results.push_back(std::move(r));
  }
  if (a.format == "json") emit(bgb::io::criteria_json(results).dump(2), a.out);
  return all_ok ? 0 : 1;
}

int cmd_census(const CommonArgs& a, int max_n, int max_k, std::vector<uint64_t> qs,
               std::vector<std::string> flavors) {
  std::string csv = "flavor,p,k,n,fiber,count,total\n";
  for (const std::string& fl : flavors) {
    bgb::Flavor flavor = fl == "zpk" ? bgb::Flavor::Zpk : bgb::Flavor::FqTk;
    for (uint64_t q : qs)
      for (int k = 1; k <= max_k; ++k) {
        bgb::Ring ring = bgb::Ring::make(flavor, q, k);
        for (int n = 2; n <= max_n; ++n) {
          if (n <= 3) {
            // closed forms; fibers listed as one-line permutations
            std::vector<std::pair<std::string, unsigned long long>> rows;
            unsigned long long total = 0;
            if (n == 2) {
              rows = {{"12", static_cast<unsigned long long>(ring.k())}, {"21", 1}};
            } else {
              auto counts = bgb::fiber_counts_n3(q, k);
              const bgb::Fiber fibers[] = {bgb::Fiber::One, bgb::Fiber::S1, bgb::Fiber::S2,
                                           bgb::Fiber::S1S2, bgb::Fiber::S2S1, bgb::Fiber::W0};
              for (int i = 0; i < 6; ++i)
                rows.push_back({bgb::fiber_perm(fibers[i]).to_string(), counts[i]});
            }
            for (auto& [w, cnt] : rows) total += cnt;
            for (auto& [w, cnt] : rows)
              csv += fl + "," + std::to_string(q) + "," + std::to_string(k) + "," +
                     std::to_string(n) + "," + w + "," + std::to_string(cnt) + "," +
                     std::to_string(total) + "\n";
          } else if (bgb::flag_count(ring, n) <= a.budget) {
            bgb::OrbitReport rep = bgb::double_cosets(ring, n, oracle_opts(a));
            std::string body = bgb::io::report_csv(rep);
            csv += body.substr(body.find('\n') + 1);
          } else {
            std::cerr << "census: skipping " << ring.to_string() << " n=" << n
                      << " (flag space above budget)\n";
          }
        }
      }
  }
  emit(csv, a.out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-coset census for GL_n over finite chain rings"};
  app.set_config("--config");
  app.require_subcommand(1);

  CommonArgs a;
  int n = 2;
  std::string method = "auto", matrix, mat_a, mat_b, suite;
  int max_n = 3, max_k = 3;
  std::vector<uint64_t> qs = {2, 3};
  std::vector<std::string> flavors = {"zpk", "fqtk"};

  CLI::App* count = app.add_subcommand("count", "number of double cosets");
  add_common(count, a, true);
  count->add_option("--n", n, "matrix size")->required()->check(CLI::Range(1, 6));
  count->add_option("--method", method, "auto, closed or oracle")
      ->check(CLI::IsMember({"auto", "closed", "oracle"}));

  CLI::App* enumerate = app.add_subcommand("enumerate", "one representative per double coset");
  add_common(enumerate, a, true);
  enumerate->add_option("--n", n, "matrix size")->required()->check(CLI::Range(2, 6));

  CLI::App* invariants = app.add_subcommand("invariants", "W, r and intersection profile");
  add_common(invariants, a, true);
  invariants->add_option("--matrix", matrix, "matrix, rows ';'-separated")->required();
  invariants->get_option("--format")->default_str("json");

  CLI::App* equivc = app.add_subcommand("equiv", "same double coset?");
  add_common(equivc, a, true);
  int equiv_n = 0;
  equivc->add_option("--n", equiv_n, "matrix size (checked against the inputs)");
  equivc->add_option("--a", mat_a, "first matrix")->required();
  equivc->add_option("--b", mat_b, "second matrix")->required();

  CLI::App* canonical = app.add_subcommand("canonical", "canonical flag representative of gB");
  add_common(canonical, a, true);
  canonical->add_option("--matrix", matrix, "matrix, rows ';'-separated")->required();

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, a, false);
  verify->add_option("suite", suite, "n2, n3, bmb, 42, cases, growth, invariants, flags, all")
      ->required();

  CLI::App* census = app.add_subcommand("census", "fiber census over a parameter grid (CSV)");
  add_common(census, a, false);
  census->add_option("--max-n", max_n, "largest matrix size");
  census->add_option("--max-k", max_k, "largest ring length");
  census->add_option("--qs", qs, "residue characteristics");
  census->add_option("--flavors", flavors, "ring flavors to sweep")
      ->check(CLI::IsMember({"zpk", "fqtk"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (count->parsed()) return cmd_count(a, n, method);
    if (enumerate->parsed()) return cmd_enumerate(a, n);
    if (invariants->parsed()) {
      if (invariants->get_option("--format")->empty()) a.format = "json";
      return cmd_invariants(a, matrix);
    }
    if (equivc->parsed()) return cmd_equiv(a, mat_a, mat_b, equiv_n);
    if (canonical->parsed()) return cmd_canonical(a, matrix);
    if (verify->parsed()) return cmd_verify(a, suite);
    if (census->parsed()) return cmd_census(a, max_n, max_k, qs, flavors);
  } catch (const bgb::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
