#include "crtvss/math/crt.hpp"

#include <algorithm>
#include <set>

#include "crtvss/common/error.hpp"
#include "crtvss/math/modmath.hpp"

namespace crtvss {

CoalitionContext MakeCoalitionContext(const AbParams& params,
                                      const std::vector<size_t>& indices) {
  if (indices.size() != params.t) {
    throw Error(ErrorCode::kWrongCoalitionSize,
                "coalition has " + std::to_string(indices.size()) + " members, need " +
                    std::to_string(params.t));
  }
  std::set<size_t> unique(indices.begin(), indices.end());
  if (unique.size() != indices.size()) {
    throw Error(ErrorCode::kDuplicateIndex, "coalition indices repeat");
  }
  for (size_t index : unique) {
    if (index < 1 || index > params.n) {
      throw Error(ErrorCode::kDuplicateIndex,
                  "index " + std::to_string(index) + " outside [1, n]");
    }
  }

  CoalitionContext ctx;
  ctx.indices.assign(unique.begin(), unique.end());
  ctx.m_c = 1;
  for (size_t index : ctx.indices) {
    ctx.moduli.push_back(params.moduli[index - 1]);
    ctx.m_c *= params.moduli[index - 1];
  }
  for (const mpz_class& modulus : ctx.moduli) {
    const mpz_class rest = ctx.m_c / modulus;
    ctx.lambdas.push_back(ModInverse(rest, modulus) * rest);
  }
  return ctx;
}

mpz_class CrtReconstruct(const std::vector<Residue>& residues,
                         const CoalitionContext& ctx,
                         OpCounter* counter) {
  if (residues.size() != ctx.moduli.size()) {
    throw Error(ErrorCode::kIndexMismatch, "residue count differs from coalition size");
  }
  mpz_class acc = 0;
  for (size_t i = 0; i < residues.size(); ++i) {
    const auto& [value, modulus] = residues[i];
    if (modulus != ctx.moduli[i]) {
      throw Error(ErrorCode::kIndexMismatch,
                  "residue modulus " + modulus.get_str() + " does not match coalition slot");
    }
    if (value < 0 || value >= modulus) {
      throw Error(ErrorCode::kIndexMismatch, "residue value outside [0, modulus)");
    }
    acc += value * ctx.lambdas[i];
    if (counter != nullptr) {
      ++counter->mults;
    }
  }
  return NormalizeMod(acc, ctx.m_c);
}

}  // namespace crtvss
