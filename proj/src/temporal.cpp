#include "tai/temporal.hpp"

#include <cstdint>
#include <stdexcept>

#include "tai/errors.hpp"
#include "tai/formula_ops.hpp"

namespace tai {

namespace {

using Bits = std::vector<std::uint8_t>;

// Bottom-up satisfaction over the lasso: every node yields one truth table
// per position, all over the same variable scope, so connectives are
// pointwise and quantifiers reduce along the fastest axis.
class LassoEval {
 public:
  LassoEval(const EvalContext& ctx, const Lasso& lasso) : ctx_(ctx), lasso_(lasso) {
    posEnvs_.reserve(lasso.size());
    for (int i = 0; i < lasso.size(); ++i) {
      PredEnv env(ctx.env);
      for (std::size_t d = 0; d < lasso.preds.size(); ++d)
        env.bind(lasso.preds[d], lasso.at(i)[d]);
      posEnvs_.push_back(std::move(env));
    }
  }

  std::vector<Bits> eval(const Formula& f, std::vector<std::string>& scope) {
    if (!has_temporal_at_own_level(f)) {
      // Temporal-free subtree: classical evaluation against each stage.
      std::vector<Bits> out;
      out.reserve(lasso_.size());
      for (int i = 0; i < lasso_.size(); ++i) {
        EvalContext at{ctx_.structure, &posEnvs_[i], ctx_.opts};
        out.push_back(truth_table(at, f, scope));
      }
      return out;
    }
    switch (f.kind()) {
      case Formula::Kind::Not: {
        std::vector<Bits> c = eval(f.child(), scope);
        for (Bits& b : c)
          for (std::uint8_t& x : b) x = !x;
        return c;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
      case Formula::Kind::Iff: {
        std::vector<Bits> l = eval(f.left(), scope);
        std::vector<Bits> r = eval(f.right(), scope);
        for (int i = 0; i < lasso_.size(); ++i)
          for (std::size_t j = 0; j < l[i].size(); ++j) {
            switch (f.kind()) {
              case Formula::Kind::And: l[i][j] = l[i][j] && r[i][j]; break;
              case Formula::Kind::Or: l[i][j] = l[i][j] || r[i][j]; break;
              case Formula::Kind::Implies: l[i][j] = !l[i][j] || r[i][j]; break;
              default: l[i][j] = l[i][j] == r[i][j]; break;
            }
          }
        return l;
      }
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        scope.push_back(f.quantVar());
        std::vector<Bits> c = eval(f.child(), scope);
        scope.pop_back();
        const std::size_t n = static_cast<std::size_t>(ctx_.structure.domainSize());
        std::vector<Bits> out(lasso_.size());
        for (int i = 0; i < lasso_.size(); ++i) {
          out[i].assign(c[i].size() / n, f.kind() == Formula::Kind::Forall ? 1 : 0);
          for (std::size_t j = 0; j < out[i].size(); ++j)
            for (std::size_t e = 0; e < n; ++e) {
              std::uint8_t v = c[i][j * n + e];
              if (f.kind() == Formula::Kind::Exists)
                out[i][j] = out[i][j] || v;
              else
                out[i][j] = out[i][j] && v;
            }
        }
        return out;
      }
      case Formula::Kind::Next: {
        std::vector<Bits> c = eval(f.child(), scope);
        std::vector<Bits> out(lasso_.size());
        for (int i = 0; i < lasso_.size(); ++i) out[i] = c[lasso_.nextPos(i)];
        return out;
      }
      case Formula::Kind::Eventually:
        return unfold(eval(f.child(), scope), nullptr, /*least=*/true);
      case Formula::Kind::Always:
        return unfold(eval(f.child(), scope), nullptr, /*least=*/false);
      case Formula::Kind::Until: {
        std::vector<Bits> hold = eval(f.left(), scope);
        std::vector<Bits> goal = eval(f.right(), scope);
        return unfold(goal, &hold, /*least=*/true);
      }
      default:
        // Atoms/Equal/Iter are temporal-free and handled above.
        throw std::logic_error("temporal evaluation reached a non-temporal node");
    }
  }

 private:
  // Solves X(i) = base(i) ∨ (hold(i) ∧ X(next(i))) as a least fixpoint, or
  // with ∧/no-hold as a greatest fixpoint: F := lfp with hold ≡ true,
  // G := gfp, U := lfp with its left operand as hold.
  std::vector<Bits> unfold(std::vector<Bits> base, const std::vector<Bits>* hold, bool least) {
    const int len = lasso_.size();
    std::vector<Bits> cur(len);
    for (int i = 0; i < len; ++i) cur[i].assign(base[i].size(), least ? 0 : 1);
    for (int sweep = 0; sweep <= len + 1; ++sweep) {
      bool changed = false;
      std::vector<Bits> next(len);
      for (int i = 0; i < len; ++i) {
        const Bits& succ = cur[lasso_.nextPos(i)];
        next[i].resize(base[i].size());
        for (std::size_t j = 0; j < base[i].size(); ++j) {
          std::uint8_t carry = hold ? static_cast<std::uint8_t>((*hold)[i][j] && succ[j])
                                    : succ[j];
          std::uint8_t v = least ? (base[i][j] || carry) : (base[i][j] && succ[j]);
          next[i][j] = v;
          changed = changed || v != cur[i][j];
        }
      }
      cur = std::move(next);
      if (!changed) return cur;
    }
    throw std::logic_error("temporal unfolding did not stabilize");
  }

  const EvalContext& ctx_;
  const Lasso& lasso_;
  std::vector<PredEnv> posEnvs_;
};

Tuple index_tuple(long long j, int n, std::size_t k) {
  Tuple t(k, 0);
  for (std::size_t i = k; i-- > 0;) {
    t[i] = static_cast<int>(j % n);
    j /= n;
  }
  return t;
}

Relation bits_to_relation(const Bits& bits, int n, std::size_t k) {
  Relation out(static_cast<int>(k));
  for (long long j = 0; j < static_cast<long long>(bits.size()); ++j)
    if (bits[static_cast<std::size_t>(j)]) out.insert(index_tuple(j, n, k));
  return out;
}

}  // namespace

std::vector<Relation> eval_lasso_positions(const EvalContext& ctx, const Lasso& lasso,
                                           const Formula& psi,
                                           const std::vector<std::string>& vars) {
  LassoEval ev(ctx, lasso);
  std::vector<std::string> scope = vars;
  std::vector<Bits> bits = ev.eval(psi, scope);
  std::vector<Relation> out;
  out.reserve(bits.size());
  for (const Bits& b : bits)
    out.push_back(bits_to_relation(b, ctx.structure.domainSize(), vars.size()));
  return out;
}

Relation eval_lasso(const EvalContext& ctx, const Lasso& lasso, const Formula& psi,
                    const std::vector<std::string>& vars) {
  LassoEval ev(ctx, lasso);
  std::vector<std::string> scope = vars;
  std::vector<Bits> bits = ev.eval(psi, scope);
  return bits_to_relation(bits[0], ctx.structure.domainSize(), vars.size());
}

Relation iter_relation(const EvalContext& ctx, const Formula& iterNode) {
  Lasso lasso = iterate(ctx, iterNode.system());
  return eval_lasso(ctx, lasso, iterNode.header(), iterNode.headerVars());
}

bool eval_iter_node(const EvalContext& ctx, const Formula& iterNode, Assignment& a) {
  // The construct's value only depends on the argument tuple, so evaluate
  // the arguments and test membership in the defined relation.
  Tuple t;
  t.reserve(iterNode.args().size());
  for (const Term& arg : iterNode.args()) t.push_back(eval_term(ctx, arg, a));
  return iter_relation(ctx, iterNode).contains(t);
}

}  // namespace tai
