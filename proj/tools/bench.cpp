// Benchmark comparing the parallel tuple-evaluation kernel against the
// serial reference on identical inputs, checking exact agreement. The
// parallel path shares the worklist across OpenMP threads; the reference
// is a plain recursive enumerator.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tai/eval.hpp"
#include "tai/formula.hpp"
#include "tai/formula_ops.hpp"
#include "tai/gen.hpp"
#include "tai/rewrites.hpp"
#include "tai/structure.hpp"

using namespace tai;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Case {
  std::string name;
  std::string query;
};

FiniteStructure dense_structure(Gen& g, int domain) {
  std::ostringstream text;
  text << "domain " << domain << "\nrel E/2 = {";
  for (int a = 0; a < domain; ++a)
    for (int b = 0; b < domain; ++b)
      if (g.range(4) == 0) text << " (" << a << "," << b << ")";
  text << " }\nrel P/1 = {";
  for (int a = 0; a < domain; ++a)
    if (g.coin()) text << " (" << a << ")";
  text << " }\n";
  return parse_structure(text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare the parallel evaluation kernel with the serial reference"};
  int domain = 32;
  int repeats = 3;
  std::uint64_t seed = 1;
  app.add_option("--domain", domain, "domain size of the benchmark structure");
  app.add_option("--repeats", repeats, "timed repetitions per query");
  app.add_option("--seed", seed, "structure seed");
  CLI11_PARSE(app, argc, argv);

  Gen g(seed);
  FiniteStructure s = dense_structure(g, domain);

  std::vector<Case> cases = {
      {"quantified-fo", "exists w. E(x,w) & E(w,y) & !E(x,y)"},
      {"reachability", "lfp[R(x,y): E(x,y) | exists z. E(x,z) & R(z,y)](x,y)"},
      {"eventual-always", "[F G R(hx)][iter R(x): P(x) | exists z. E(z,x) & R(z)](u)"},
  };

  std::cout << "domain " << domain << ", " << repeats << " repeats per query\n";
  std::cout << std::left << std::setw(18) << "query" << std::right << std::setw(14)
            << "parallel(ms)" << std::setw(14) << "serial(ms)" << std::setw(10) << "speedup"
            << std::setw(8) << "agree\n";

  bool allAgree = true;
  for (const Case& c : cases) {
    Formula f = expand(parse_formula(c.query, &s.signature()), &s.signature());
    std::vector<std::string> vars = free_variables_ordered(f);

    EvalContext par{s};
    EvalContext ser{s};

    Relation rp(static_cast<int>(vars.size())), rs(static_cast<int>(vars.size()));
    double tp = 0, ts = 0;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = Clock::now();
      rp = sat_set(par, f, vars);
      tp += ms_since(t0);
      auto t1 = Clock::now();
      rs = sat_set_reference(ser, f, vars);
      ts += ms_since(t1);
    }
    bool agree = rp == rs;
    allAgree = allAgree && agree;
    std::cout << std::left << std::setw(18) << c.name << std::right << std::setw(14) << std::fixed
              << std::setprecision(2) << tp / repeats << std::setw(14) << ts / repeats
              << std::setw(10) << std::setprecision(2) << (tp > 0 ? ts / tp : 0.0) << std::setw(7)
              << (agree ? "yes" : "NO") << "\n";
  }
  if (!allAgree) {
    std::cerr << "kernel disagreement detected\n";
    return 1;
  }
  return 0;
}
