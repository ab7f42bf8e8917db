#pragma once

// Necessary conditions on code vectors coming from cyclic coverings branched
// over the exceptional divisors, and the B-inequality for K[2].

#include <optional>
#include <string>
#include <vector>

#include "adecodes/codes.hpp"

namespace adecodes {

struct SurfaceContext {
  std::optional<Integer> degree;  // d = H^2, needed by the extended rules
  Integer K_dot_H = 0;
  bool K_even = false;            // K_S divisible by 2
  Integer b2 = 0;
  Integer chi = 1;                // chi(O_S)

  /// A surface of degree d in P^3.
  static SurfaceContext from_degree(const Integer& d);
  /// A K3 surface with a polarization of the given degree (if any).
  static SurfaceContext k3(std::optional<Integer> degree = std::nullopt);
};

enum class Outcome { Pass, Fail, Inapplicable, NoRule };

std::string to_string(Outcome o);

struct RuleResult {
  std::string rule;     // "n2", "n3", "ngt3", "n5", "ext-n2", "ext-n3", "none"
  Integer order;        // order of the vector the rule was applied to
  Outcome outcome = Outcome::Pass;
  Integer residue = 0;  // reduced into [0, modulus)
  Integer modulus = 1;
  std::string detail;
};

/// Order 2, zero H-value. (**) mod 4, or mod 8 when K_S is even.
RuleResult check_n2(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx);
/// Order 3, zero H-value. sum_s s t(A_{3s-1}) - t(E6) mod 3.
RuleResult check_n3(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx);
/// Almost simple, zero H-value, prime-power order N > 4: sum_s s t(A_{Ns-1}) mod N.
RuleResult check_ngt3(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx);
/// Order 5, zero H-value: signed refined weights mod 5.
RuleResult check_n5(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx);
/// Order 2 with nonzero H-value: (**) - d/2 - K_S.H mod 4.
RuleResult check_extended_n2(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx);
/// Order 3 with H-value eps/3: 3 | d and (***) + d/3 + eps K_S.H mod 3.
RuleResult check_extended_n3(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx);

struct RestrictionReport {
  std::vector<RuleResult> results;

  bool passed() const;  // no Fail
  bool empty() const { return results.empty(); }
};

/// Every applicable rule on each prime-power multiple (N/q) v of v; levels q
/// with no rule are listed with Outcome::NoRule.
RestrictionReport check_vector(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx);

struct CodeCheck {
  std::vector<CodeVector> vectors;            // nonzero vectors, enumeration order
  std::vector<RestrictionReport> reports;     // parallel to vectors
  bool passed() const;
};

CodeCheck check_code(const LabeledCode& code, const SurfaceContext& ctx);

struct BInequality {
  int k2_dim = 0;
  Integer lower_bound = 0;
  bool pass = true;
  bool equality = false;
};

/// dim K[2] >= sum_x delta_x - floor(b2 / 2), on the strict part of the code.
BInequality b_inequality(const LabeledCode& code, const SurfaceContext& ctx);

}  // namespace adecodes
