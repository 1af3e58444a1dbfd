#include "crtvss/sim/rank.hpp"

#include <algorithm>

namespace crtvss::sim {

void RankAssignment::MarkSecretNonce(const std::string& hex_value) {
  secret_nonces_.insert(hex_value);
}

void RankAssignment::MarkSecretKeyFingerprint(const std::string& fingerprint) {
  secret_key_fingerprints_.insert(fingerprint);
}

int RankAssignment::Rank(const Term& term) const {
  switch (term.kind) {
    case TermKind::kNonce:
      return secret_nonces_.contains(term.text) ? 0 : 1;  // n2 vs n1
    case TermKind::kSessionKey:
    case TermKind::kSignKey:
    case TermKind::kDhPublic:
    case TermKind::kDhExponent:
    case TermKind::kSig:
      return 0;
    case TermKind::kEnc:
      return secret_key_fingerprints_.contains(term.text) ? 0 : 1;
    case TermKind::kPair: {
      int lowest = 1;
      for (const Term& child : term.children) {
        lowest = std::min(lowest, Rank(child));
      }
      return lowest;
    }
    default:
      return 1;  // ids, labels, digests, integers, points, hashes
  }
}

std::vector<Term> RankAssignment::Violations(const std::set<Term>& closure) const {
  std::vector<Term> out;
  for (const Term& term : closure) {
    if (Rank(term) != 0) {
      continue;
    }
    const bool bare_secret = term.kind == TermKind::kNonce ||
                             term.kind == TermKind::kSessionKey ||
                             term.kind == TermKind::kSignKey ||
                             term.kind == TermKind::kDhExponent;
    if (bare_secret) {
      out.push_back(term);
    }
  }
  return out;
}

bool RankCheck(const std::set<Term>& observations, const RankAssignment& rank,
               const DeductionContext& ctx, std::vector<Term>* violations) {
  const ClosureResult closure = DeductionClosure(observations, ctx);
  std::vector<Term> found = rank.Violations(closure.terms);
  if (violations != nullptr) {
    *violations = found;
  }
  return found.empty();
}

}  // namespace crtvss::sim
