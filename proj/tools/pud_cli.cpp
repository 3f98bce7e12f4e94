// Command-line harness: generate instances, run them in any mode, verify
// against brute force, and sweep error levels into a CSV.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "pud/core_model.hpp"
#include "pud/generate.hpp"
#include "pud/harness.hpp"
#include "pud/io.hpp"

using namespace pud;

namespace {

constexpr int kMismatch = 1;
constexpr int kInputError = 2;

struct Files {
  std::string prefix;
  std::string pred() const { return prefix + ".pred"; }
  std::string stream() const { return prefix + ".stream"; }
  std::string bundles() const { return prefix + ".bundles"; }
  std::string deletions() const { return prefix + ".deletions"; }
  std::string insertions() const { return prefix + ".insertions"; }
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

template <class F>
auto parse_file(const std::string& path, F&& f) {
  auto in = open_in(path);
  try {
    return f(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Loaded {
  Day T = 1;
  std::int32_t vertices = 0;
  std::vector<RealEvent> stream;
  std::vector<Prediction> predictions;
  std::vector<PredictionBundle> bundles;
};

Loaded load(const Files& f, std::int32_t vertices_flag) {
  Loaded l;
  l.stream = parse_file(f.stream(), [](std::istream& in) { return read_stream(in); });
  l.predictions = parse_file(f.pred(), [](std::istream& in) { return read_predictions(in); });
  {
    auto in = open_in(f.stream());
    auto T = read_sidecar(in, "T");
    l.T = T ? std::stoi(*T) : (l.stream.empty() ? 1 : l.stream.back().day);
  }
  {
    auto in = open_in(f.stream());
    auto v = read_sidecar(in, "vertices");
    l.vertices = vertices_flag > 0 ? vertices_flag : (v ? std::stoi(*v) : 0);
  }
  if (std::ifstream probe(f.bundles()); probe)
    l.bundles = parse_file(f.bundles(), [](std::istream& in) { return read_bundles(in); });
  return l;
}

void print_answer(std::ostream& out, Day day, const Answer& a) {
  out << day;
  for (auto v : a) out << ' ' << v;
  out << '\n';
}

// Error level as a multiple of T: either every event moves by about
// `level` days, or a `level / displacement` share moves by `displacement`.
ErrorModel sweep_model(ErrorKind kind, double level, double displacement) {
  if (kind == ErrorKind::SparseOffset) return {kind, displacement, std::min(1.0, level / displacement)};
  // Rounded uniform offsets on [-s, s] average s/2 per event.
  return {ErrorKind::UniformOffset, 2.0 * level, 0.0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic algorithms driven by predicted update times"};
  app.require_subcommand(1);

  std::string problem = "counter", model = "exact", mode = "predicted", out, in_prefix;
  double sigma = 1.0, rho = 0.1;
  Day T = 256;
  std::int32_t n = 16;
  std::uint64_t seed = 1;
  int k = 1, cap = 0, seeds = 5;
  std::string sweep = "1,2,4,8";

  auto* gen = app.add_subcommand("generate", "write a stream, predictions and bundles");
  gen->add_option("--problem", problem)->check(CLI::IsMember({"counter", "connectivity", "msf", "decremental-max"}));
  gen->add_option("--model", model);
  gen->add_option("--sigma", sigma);
  gen->add_option("--rho", rho);
  gen->add_option("--T", T)->check(CLI::PositiveNumber);
  gen->add_option("--n", n)->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out, "file prefix")->required();

  auto* run = app.add_subcommand("run", "run an instance and print one line per day");
  auto* verify = app.add_subcommand("verify", "compare a mode's outputs with brute force");
  for (auto* sub : {run, verify}) {
    sub->add_option("--problem", problem)->check(CLI::IsMember({"counter", "connectivity", "msf", "decremental-max"}));
    sub->add_option("--mode", mode);
    sub->add_option("--in", in_prefix, "file prefix written by generate")->required();
    sub->add_option("--n", n, "vertex count, if not recorded in the stream file");
    sub->add_option("--seed", seed);
    sub->add_option("--k", k);
    sub->add_option("--instances-cap", cap);
  }
  run->add_option("--out", out, "write outputs here instead of stdout");

  std::string bench_model = "sparse-offset";
  double displacement = 32.0;
  auto* bench = app.add_subcommand("bench", "sweep injected error and write CSV rows");
  bench->add_option("--problem", problem)->check(CLI::IsMember({"counter", "connectivity", "msf", "decremental-max"}));
  bench->add_option("--T", T)->check(CLI::PositiveNumber);
  bench->add_option("--n", n)->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed);
  bench->add_option("--seeds", seeds);
  bench->add_option("--sweep", sweep, "error levels as multiples of T");
  bench->add_option("--model", bench_model, "sparse-offset (default) or uniform-offset")
      ->check(CLI::IsMember({"sparse-offset", "uniform-offset"}));
  bench->add_option("--sigma", displacement, "displacement of a sparse offset");
  bench->add_option("--out", out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kInputError;
  }

  try {
    const ProblemKind pk = parse_problem(problem);
    if (*gen) {
      ErrorModel em{parse_error_kind(model), sigma, rho};
      auto g = generate(em, pk, n, T, seed);
      Files f{out};
      {
        auto o = open_out(f.stream());
        o << "# T=" << g.T << "\n# vertices=" << g.vertices << '\n';
        write_stream(o, g.stream);
      }
      {
        auto o = open_out(f.pred());
        o << "# l1_error=" << g.l1 << '\n';
        write_predictions(o, g.predictions);
      }
      {
        auto o = open_out(f.bundles());
        write_bundles(o, make_bundles(g.predictions, g.T));
      }
      {
        auto o = open_out(f.deletions());
        write_deletion_stream(o, to_deletion_stream(g));
      }
      {
        auto o = open_out(f.insertions());
        write_insertion_instance(o, to_insertion_instance(g));
      }
      std::cout << "l1_error=" << g.l1 << '\n';
      return 0;
    }

    if (*run || *verify) {
      Loaded l = load(Files{in_prefix}, run->count("--n") || verify->count("--n") ? n : 0);
      RunOptions opt;
      opt.mode = parse_mode(mode);
      opt.problem = pk;
      opt.vertices = l.vertices;
      opt.seed = seed;
      opt.k = k;
      opt.instances_cap = cap;
      auto res = run_stream(opt, l.T, l.stream, l.predictions, l.bundles, &std::cerr);
      if (*run) {
        std::ofstream file;
        if (!out.empty()) file = open_out(out);
        std::ostream& o = out.empty() ? std::cout : file;
        for (std::size_t i = 0; i < res.outputs.size(); ++i) print_answer(o, l.stream[i].day, res.outputs[i]);
        std::ostringstream dump;
        res.counters.dump(dump);
        dump << "depth=" << res.depth << "\nmeta_steps=" << res.meta_steps << '\n';
        std::istringstream lines(dump.str());
        for (std::string line; std::getline(lines, line);) o << "# " << line << '\n';
        return 0;
      }
      auto expected = brute_force_outputs(pk, l.vertices, l.stream);
      int mismatches = 0;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (res.outputs[i] == expected[i]) continue;
        if (++mismatches <= 10) {
          std::cout << "day " << l.stream[i].day << ": expected";
          for (auto v : expected[i]) std::cout << ' ' << v;
          std::cout << ", got";
          for (auto v : res.outputs[i]) std::cout << ' ' << v;
          std::cout << '\n';
        }
      }
      std::cout << (mismatches ? "FAIL" : "PASS") << ' ' << expected.size() - mismatches << '/' << expected.size()
                << " days match\n";
      return mismatches ? kMismatch : 0;
    }

    if (*bench) {
      std::vector<double> levels;
      std::stringstream ss(sweep);
      for (std::string tok; std::getline(ss, tok, ',');) levels.push_back(std::stod(tok));
      auto csv = open_out(out);
      csv << "model,T,l1_error,preprocess_units,retrigger_units,total_units,reschedules,depth\n";
      auto row = [&](const std::string& name, const GeneratedInstance& g, const RunResult& r) {
        csv << name << ',' << g.T << ',' << g.l1 << ',' << r.counters.preprocess_units() << ','
            << r.counters.retrigger_units() << ',' << r.counters.total_units() << ',' << r.counters.reschedules << ','
            << r.depth << '\n';
      };
      RunOptions opt;
      opt.problem = pk;
      for (int s = 0; s < seeds; ++s) {
        const std::uint64_t sd = seed + static_cast<std::uint64_t>(s);
        opt.seed = sd;
        auto exact = generate(ErrorModel{}, pk, n, T, sd);
        opt.vertices = exact.vertices;
        opt.mode = Mode::Offline;
        row("offline", exact, run_stream(opt, T, exact.stream, exact.predictions, {}));
        opt.mode = Mode::Predicted;
        row("exact", exact, run_stream(opt, T, exact.stream, exact.predictions, {}));
        for (double level : levels) {
          auto em = sweep_model(parse_error_kind(bench_model), level, displacement);
          auto g = generate(em, pk, n, T, sd);
          std::ostringstream name;
          name << bench_model << ':' << (em.kind == ErrorKind::SparseOffset ? em.rho : em.sigma);
          row(name.str(), g, run_stream(opt, T, g.stream, g.predictions, {}));
        }
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
