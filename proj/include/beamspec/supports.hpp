#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace beamspec {

enum class EndPoint { Left, Right };

/// The homogeneous condition xi^(order)(end) = 0.
struct BoundaryConstraint {
  EndPoint end;
  int order;

  bool essential() const { return order <= 1; }
  friend bool operator==(const BoundaryConstraint&, const BoundaryConstraint&) = default;
};

enum class CaseName { AA, AB, AC, BB, BC, CC, Add1, Add2, Add3 };

/// First-order differentiation operators with a boundary value at the left
/// and/or right end: the first sign is x = 0, the second x = l, '+' meaning
/// the function vanishes there.
enum class FirstOrderOp { PP, PM, MP, MM };

enum class Group { AnalyticI, NumericII };

struct SupportCase {
  CaseName name;
  std::array<BoundaryConstraint, 4> constraints;
  // Product order as written: factorization[3] is applied first.
  std::array<FirstOrderOp, 4> factorization;
  Group group;
  int kernel_dimension;
};

/// A parsed case name. Mirrored supports (ba, ca, cb) resolve to their
/// canonical case with `reflected` set; evaluation then uses x -> l - x.
struct ResolvedCase {
  CaseName name;
  bool reflected = false;

  friend bool operator==(const ResolvedCase&, const ResolvedCase&) = default;
};

const SupportCase& support_case(CaseName name);
std::span<const SupportCase> all_cases();

std::array<BoundaryConstraint, 4> constraints_of(const SupportCase& c);
std::vector<BoundaryConstraint> essential_constraints(const SupportCase& c);
int kernel_dimension(const SupportCase& c);

/// Resolves one of "ba", "ca", "cb" (case-insensitive). Throws
/// std::invalid_argument for anything else.
ResolvedCase mirror(std::string_view mirrored_name);

/// Accepts all nine canonical names plus the three mirrored ones.
ResolvedCase parse_case(std::string_view name);

std::string_view to_string(CaseName name);
std::string to_string(const ResolvedCase& rc);

bool has_left(FirstOrderOp op);
bool has_right(FirstOrderOp op);

BoundaryConstraint reflect(BoundaryConstraint c);
/// Constraint list of the reflected beam (ends swapped).
std::vector<BoundaryConstraint> reflect(std::span<const BoundaryConstraint> cs);

/// Constraints as they apply to the physical beam described by `rc`.
std::vector<BoundaryConstraint> physical_constraints(const ResolvedCase& rc);

}  // namespace beamspec
