// Command-line front end: evaluate queries against structure files,
// translate iteration constructs to fixpoint form, run the property
// suites, and generate fuzz corpora. Exit codes are a stable contract:
// 0 success, 1 parse error, 2 semantic error (arity, polarity,
// unsupported fragment), 3 step limit, 4 property failure / mismatch.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tai/errors.hpp"
#include "tai/eval.hpp"
#include "tai/formula.hpp"
#include "tai/formula_ops.hpp"
#include "tai/gen.hpp"
#include "tai/rewrites.hpp"
#include "tai/laws.hpp"
#include "tai/structure.hpp"
#include "tai/translate.hpp"

namespace {

using namespace tai;

struct RunConfig {
  std::string structurePath;
  std::string queryText;
  std::string queryFile;
  std::string varsSpec;
  std::string to;
  std::string law;
  std::string outDir = ".";
  std::string format = "tuples";
  bool check = false;
  int count = 100;
  std::uint64_t seed = 1;
  int maxDomain = 4;
  int maxSteps = 10000;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_vars(const std::string& spec) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : spec) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string tuple_text(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

void print_relation(const Relation& rel, const std::string& format) {
  if (format == "counts") {
    std::cout << rel.tuples().size() << "\n";
    return;
  }
  for (const Tuple& t : rel.tuples()) std::cout << tuple_text(t) << "\n";
}

// A single rel block in the structure-file syntax, so translated output
// can be appended to the input structure and re-run as-is.
std::string rel_block(const std::string& name, const Relation& rel) {
  std::ostringstream out;
  out << "rel " << name << "/" << rel.arity() << " = {";
  for (const Tuple& t : rel.tuples()) out << " " << tuple_text(t);
  out << " }";
  return out.str();
}

FiniteStructure load_structure(const RunConfig& cfg) {
  if (cfg.structurePath.empty()) throw SemanticError("a structure file is required");
  return parse_structure(slurp(cfg.structurePath));
}

std::string load_query(const RunConfig& cfg) {
  if (!cfg.queryText.empty()) return cfg.queryText;
  if (!cfg.queryFile.empty()) return slurp(cfg.queryFile);
  throw SemanticError("a query is required (--query or --query-file)");
}

std::vector<std::string> query_vars(const RunConfig& cfg, const Formula& f) {
  if (!cfg.varsSpec.empty()) return split_vars(cfg.varsSpec);
  return free_variables_ordered(f);
}

EvalOptions options(const RunConfig& cfg) {
  EvalOptions opts;
  opts.maxSteps = cfg.maxSteps;
  return opts;
}

int cmd_eval(const RunConfig& cfg) {
  FiniteStructure s = load_structure(cfg);
  Formula f = parse_formula(load_query(cfg), &s.signature());
  std::vector<std::string> vars = query_vars(cfg, f);
  EvalContext ctx{s, nullptr, options(cfg)};
  Relation rel = sat_set(ctx, expand(f, &s.signature()), vars);
  print_relation(rel, cfg.format);
  return 0;
}

int cmd_translate(const RunConfig& cfg) {
  FiniteStructure s = load_structure(cfg);
  Formula f = parse_formula(load_query(cfg), &s.signature());
  std::vector<std::string> vars = query_vars(cfg, f);
  EvalContext ctx{s, nullptr, options(cfg)};

  if (cfg.to == "pfp") {
    Formula tr = translate_to_pfp(f, &s.signature());
    std::cout << print_formula(tr) << "\n";
    if (!cfg.check) return 0;
    Relation want = sat_set(ctx, expand(f, &s.signature()), vars);
    Relation got = sat_set(ctx, expand(tr, &s.signature()), vars);
    std::cout << (got == want ? "MATCH" : "MISMATCH") << "\n";
    return got == want ? 0 : 4;
  }
  if (cfg.to == "lfp") {
    MonotoneTranslation mt = translate_monotone_to_lfp(f, &s.signature());
    std::cout << print_formula(mt.formula) << "\n";
    FiniteStructure aug = materialize_aux(ctx, mt.aux);
    for (const StageAux& a : mt.aux) {
      std::cout << rel_block(a.leqName, aug.relation(a.leqName)) << "\n";
      std::cout << rel_block(a.nextName, aug.relation(a.nextName)) << "\n";
    }
    if (!cfg.check) return 0;
    Relation want = sat_set(ctx, expand(f, &s.signature()), vars);
    EvalContext ctx2{aug, nullptr, options(cfg)};
    Relation got = sat_set(ctx2, expand(mt.formula, &aug.signature()), vars);
    std::cout << (got == want ? "MATCH" : "MISMATCH") << "\n";
    return got == want ? 0 : 4;
  }
  throw SemanticError("--to must be pfp or lfp");
}

int cmd_check(const RunConfig& cfg) {
  LawReport rep = run_law(cfg.law, cfg.count, cfg.seed, cfg.maxDomain);
  std::cout << rep.pass << "/" << cfg.count << " pass\n";
  if (rep.fail == 0) return 0;
  std::cout << rep.counterexample;
  return 4;
}

int cmd_fuzz(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.outDir);
  FiniteStructure sigOnly = parse_structure("domain 1\nrel E/2 = { }\nrel P/1 = { }");
  Gen g(cfg.seed);
  for (int i = 0; i < cfg.count; ++i) {
    FiniteStructure s = random_structure(g, cfg.maxDomain);
    Formula f = random_formula(g, 4);
    std::string text = print_formula(f);
    // Every emitted formula must re-parse to the same tree; anything else
    // is a generator bug worth failing loudly on.
    if (parse_formula(text, &sigOnly.signature()) != f)
      throw SemanticError("generated formula failed to re-parse: " + text);
    std::ostringstream stem;
    stem << "case_" << std::setw(3) << std::setfill('0') << i;
    std::ofstream(fs::path(cfg.outDir) / (stem.str() + ".structure"), std::ios::binary)
        << print_structure(s);
    std::ofstream(fs::path(cfg.outDir) / (stem.str() + ".formula"), std::ios::binary)
        << text << "\n";
  }
  std::cout << "wrote " << cfg.count << " pairs to " << cfg.outDir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluator, translator and property harness for iterated-definition queries"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto addCommon = [&](CLI::App* c) {
    c->add_option("--structure", cfg.structurePath, "structure file");
    c->add_option("--query", cfg.queryText, "query text");
    c->add_option("--query-file", cfg.queryFile, "file holding the query");
    c->add_option("--vars", cfg.varsSpec, "comma-separated free variables fixing column order");
    c->add_option("--max-steps", cfg.maxSteps, "stage iteration limit");
    c->add_option("--format", cfg.format, "tuples|counts")
        ->check(CLI::IsMember({"tuples", "counts"}));
  };

  CLI::App* ev = app.add_subcommand("eval", "evaluate a query against a structure");
  addCommon(ev);

  CLI::App* tr = app.add_subcommand("translate", "rewrite iteration constructs to fixpoint form");
  addCommon(tr);
  tr->add_option("--to", cfg.to, "target fragment: pfp|lfp")
      ->required()
      ->check(CLI::IsMember({"pfp", "lfp"}));
  tr->add_flag("--check", cfg.check, "cross-evaluate and print MATCH/MISMATCH");

  std::string lawList;
  for (const std::string& n : tai::law_names()) lawList += (lawList.empty() ? "" : ", ") + n;
  CLI::App* ck = app.add_subcommand("check", "run a property suite over seeded instances");
  ck->add_option("--law", cfg.law, "one of: " + lawList)->required();
  ck->add_option("--count", cfg.count, "instances to run");
  ck->add_option("--seed", cfg.seed, "random seed");
  ck->add_option("--max-domain", cfg.maxDomain, "largest generated domain");

  CLI::App* fz = app.add_subcommand("fuzz", "write seeded structure/formula pairs");
  fz->add_option("--count", cfg.count, "pairs to write");
  fz->add_option("--seed", cfg.seed, "random seed");
  fz->add_option("--max-domain", cfg.maxDomain, "largest generated domain");
  fz->add_option("--out", cfg.outDir, "output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (ev->parsed()) return cmd_eval(cfg);
    if (tr->parsed()) return cmd_translate(cfg);
    if (ck->parsed()) return cmd_check(cfg);
    return cmd_fuzz(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const StepLimitExceeded& e) {
    std::cerr << "step limit: " << e.what() << "\n";
    return 3;
  } catch (const SemanticError& e) {
    std::cerr << "semantic error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
