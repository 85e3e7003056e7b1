#include "beamspec/supports.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace beamspec {

namespace {

constexpr EndPoint L = EndPoint::Left;
constexpr EndPoint R = EndPoint::Right;
using enum FirstOrderOp;

constexpr std::array<SupportCase, 9> kCatalog{{
    {CaseName::AA, {{{L, 0}, {R, 0}, {L, 2}, {R, 2}}}, {MM, PP, MM, PP}, Group::AnalyticI, 0},
    {CaseName::AB, {{{L, 0}, {R, 0}, {R, 1}, {L, 2}}}, {MM, PM, MP, PP}, Group::NumericII, 0},
    {CaseName::AC, {{{L, 0}, {L, 2}, {R, 2}, {R, 3}}}, {MP, PP, MM, PM}, Group::NumericII, 1},
    {CaseName::BB, {{{L, 0}, {R, 0}, {L, 1}, {R, 1}}}, {MM, MM, PP, PP}, Group::NumericII, 0},
    {CaseName::BC, {{{L, 0}, {L, 1}, {R, 2}, {R, 3}}}, {MP, MP, PM, PM}, Group::NumericII, 0},
    {CaseName::CC, {{{L, 2}, {R, 2}, {L, 3}, {R, 3}}}, {PP, PP, MM, MM}, Group::NumericII, 2},
    {CaseName::Add1, {{{L, 1}, {R, 1}, {L, 3}, {R, 3}}}, {PP, MM, PP, MM}, Group::AnalyticI, 1},
    {CaseName::Add2, {{{L, 0}, {R, 1}, {L, 2}, {R, 3}}}, {MP, PM, MP, PM}, Group::AnalyticI, 0},
    {CaseName::Add3, {{{R, 0}, {L, 1}, {R, 2}, {L, 3}}}, {PM, MP, PM, MP}, Group::AnalyticI, 0},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::ranges::transform(out, out.begin(),
                         [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

}  // namespace

const SupportCase& support_case(CaseName name) {
  return kCatalog[static_cast<std::size_t>(name)];
}

std::span<const SupportCase> all_cases() { return kCatalog; }

std::array<BoundaryConstraint, 4> constraints_of(const SupportCase& c) { return c.constraints; }

std::vector<BoundaryConstraint> essential_constraints(const SupportCase& c) {
  std::vector<BoundaryConstraint> out;
  std::ranges::copy_if(c.constraints, std::back_inserter(out),
                       [](const BoundaryConstraint& bc) { return bc.essential(); });
  return out;
}

int kernel_dimension(const SupportCase& c) { return c.kernel_dimension; }

ResolvedCase mirror(std::string_view mirrored_name) {
  const std::string n = lower(mirrored_name);
  if (n == "ba") return {CaseName::AB, true};
  if (n == "ca") return {CaseName::AC, true};
  if (n == "cb") return {CaseName::BC, true};
  throw std::invalid_argument("not a mirrored support case: '" + std::string(mirrored_name) + "'");
}

ResolvedCase parse_case(std::string_view name) {
  const std::string n = lower(name);
  for (const auto& c : kCatalog) {
    if (lower(to_string(c.name)) == n) return {c.name, false};
  }
  if (n == "ba" || n == "ca" || n == "cb") return mirror(n);
  throw std::invalid_argument(
      "unknown support case '" + std::string(name) +
      "' (expected one of aa, ab, ac, bb, bc, cc, add1, add2, add3, ba, ca, cb)");
}

std::string_view to_string(CaseName name) {
  switch (name) {
    case CaseName::AA: return "AA";
    case CaseName::AB: return "AB";
    case CaseName::AC: return "AC";
    case CaseName::BB: return "BB";
    case CaseName::BC: return "BC";
    case CaseName::CC: return "CC";
    case CaseName::Add1: return "Add1";
    case CaseName::Add2: return "Add2";
    case CaseName::Add3: return "Add3";
  }
  return "?";
}

std::string to_string(const ResolvedCase& rc) {
  if (!rc.reflected) return std::string(to_string(rc.name));
  switch (rc.name) {
    case CaseName::AB: return "BA";
    case CaseName::AC: return "CA";
    case CaseName::BC: return "CB";
    default: return std::string(to_string(rc.name)) + "(reflected)";
  }
}

bool has_left(FirstOrderOp op) { return op == PP || op == PM; }
bool has_right(FirstOrderOp op) { return op == PP || op == MP; }

BoundaryConstraint reflect(BoundaryConstraint c) {
  return {c.end == L ? R : L, c.order};
}

std::vector<BoundaryConstraint> reflect(std::span<const BoundaryConstraint> cs) {
  std::vector<BoundaryConstraint> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(reflect(c));
  return out;
}

std::vector<BoundaryConstraint> physical_constraints(const ResolvedCase& rc) {
  const auto& c = support_case(rc.name).constraints;
  if (rc.reflected) return reflect(c);
  return {c.begin(), c.end()};
}

}  // namespace beamspec
