#include "crtvss/sim/deduction.hpp"

#include <map>

#include "crtvss/common/hex.hpp"
#include "crtvss/math/modmath.hpp"

namespace crtvss::sim {
namespace {

// Decomposition rules to a fixed point.
std::set<Term> Analyze(const std::set<Term>& knowledge, const DeductionContext& ctx) {
  std::set<Term> known = knowledge;
  bool changed = true;
  while (changed) {
    changed = false;

    // Session keys currently at hand, by fingerprint.
    std::map<std::string, const Term*> keys;
    for (const Term& term : known) {
      if (term.kind == TermKind::kSessionKey) {
        keys[KeyFingerprint(term)] = &term;
      }
    }

    std::set<Term> gained;
    for (const Term& term : known) {
      switch (term.kind) {
        case TermKind::kPair:
          for (const Term& child : term.children) {
            if (!known.contains(child)) gained.insert(child);
          }
          break;
        case TermKind::kSig:
          // Message-recovering signature: the body is public.
          if (!known.contains(term.children[0])) gained.insert(term.children[0]);
          break;
        case TermKind::kEnc:
          if (keys.contains(term.text) && !known.contains(term.children[0])) {
            gained.insert(term.children[0]);
          }
          break;
        case TermKind::kDhPublic:
          if (ctx.dh_modulus.has_value()) {
            for (const Term& exponent : known) {
              if (exponent.kind != TermKind::kDhExponent) continue;
              const Term combined = MakeSessionKey(MpzToHex(
                  PowMod(MpzFromHex(term.text), MpzFromHex(exponent.text), *ctx.dh_modulus)));
              if (!known.contains(combined)) gained.insert(combined);
            }
          }
          break;
        default:
          break;
      }
    }
    if (!gained.empty()) {
      known.insert(gained.begin(), gained.end());
      changed = true;
    }
  }
  return known;
}

bool Buildable(const Term& goal, const std::set<Term>& analyzed, size_t depth,
               bool* budget_hit) {
  if (analyzed.contains(goal)) {
    return true;
  }
  if (depth == 0) {
    if (budget_hit != nullptr) *budget_hit = true;
    return false;
  }
  switch (goal.kind) {
    case TermKind::kPair:
      return Buildable(goal.children[0], analyzed, depth - 1, budget_hit) &&
             Buildable(goal.children[1], analyzed, depth - 1, budget_hit);
    case TermKind::kHash:
      return Buildable(goal.children[0], analyzed, depth - 1, budget_hit);
    case TermKind::kEnc: {
      // The key must be at hand by fingerprint; keys are atoms, so
      // analysis already surfaced every derivable one.
      bool have_key = false;
      for (const Term& term : analyzed) {
        if (term.kind == TermKind::kSessionKey && KeyFingerprint(term) == goal.text) {
          have_key = true;
          break;
        }
      }
      return have_key && Buildable(goal.children[0], analyzed, depth - 1, budget_hit);
    }
    default:
      // Atoms and signatures are not synthesizable.
      return false;
  }
}

}  // namespace

ClosureResult DeductionClosure(const std::set<Term>& knowledge, const DeductionContext& ctx) {
  ClosureResult result;
  const std::set<Term> analyzed = Analyze(knowledge, ctx);
  result.terms = analyzed;

  // Synthesis targets: everything that occurs as a subterm of the
  // analyzed set. Anything deeper is covered by CanDerive on demand.
  std::set<Term> universe;
  for (const Term& term : analyzed) {
    for (const Term& subterm : Subterms(term)) {
      universe.insert(subterm);
    }
  }
  for (const Term& candidate : universe) {
    if (result.terms.contains(candidate)) continue;
    bool budget_hit = false;
    if (Buildable(candidate, analyzed, ctx.depth_budget, &budget_hit)) {
      result.terms.insert(candidate);
    }
    result.budget_exceeded |= budget_hit;
  }
  return result;
}

bool CanDerive(const Term& goal, const std::set<Term>& knowledge, const DeductionContext& ctx) {
  const std::set<Term> analyzed = Analyze(knowledge, ctx);
  return Buildable(goal, analyzed, ctx.depth_budget, nullptr);
}

}  // namespace crtvss::sim
