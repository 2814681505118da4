#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "extremal/exactmath.hpp"
#include "extremal/geometry.hpp"

namespace extremal {

/// Variety class x goal: 1 canonical CY, 2 terminal Fano, 3 general type,
/// 4 terminal CY; a = small volume, b = long vanishing range.
enum class ProblemId { P1a, P1b, P2a, P2b, P3a, P3b, P4a, P4b };

inline constexpr ProblemId kAllProblems[] = {ProblemId::P1a, ProblemId::P1b, ProblemId::P2a,
                                             ProblemId::P2b, ProblemId::P3a, ProblemId::P3b,
                                             ProblemId::P4a, ProblemId::P4b};

std::string_view to_string(ProblemId p);  // "1a"
std::optional<ProblemId> problem_from_string(std::string_view s);
/// b-problems bound the first nonvanishing degree M; a-problems the volume.
bool bounds_vanishing(ProblemId p);

enum class Branch { Single, Odd, Even };
std::string_view to_string(Branch b);
std::optional<Branch> branch_from_string(std::string_view s);

inline constexpr int kGenerationMaxDim = 30;

class DimensionOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Materializing the weights would exceed the memory guard.
class TooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Smallest n the construction is stated for, per parity. Throws
/// DimensionOutOfRange with the stated bound in the message.
void check_dimension(ProblemId p, int n);
Branch branch_for(ProblemId p, int n);

/// q > 2^{2^{exponent/2}} (>= when inclusive), with q = 1/volume for
/// a-problems and q = M for b-problems.
struct BoundSpec {
  int exponent = 0;
  bool inclusive = false;
};
/// nullopt below the dimension where the bound is claimed.
std::optional<BoundSpec> bound_spec(ProblemId p, int n);

struct FamilyMember {
  ProblemId problem = ProblemId::P1a;
  int n = 0;
  Branch branch = Branch::Single;
  Hypersurface hypersurface;
  VarietyClass expected_class;
  SingularityClass expected_singularities = SingularityClass::Terminal;  // or CanonicalAtLeast
  BigRat expected_volume;                 // closed form where one is known
  std::optional<BigInt> expected_M;       // b-problems
  std::optional<BoundSpec> bound;

  /// 1/volume or M, whichever the bound speaks about.
  BigRat bound_quantity() const;
};

/// Degree of the member; cheap even at the generation cap.
BigInt family_degree(ProblemId p, int n);

/// Streams the weights (with multiplicity), one at a time and in no particular
/// order, so very large members never need to be held at once.
void visit_weights(ProblemId p, int n,
                   const std::function<void(const BigInt& weight, int multiplicity)>& fn);

/// sum of weights - degree, computed by streaming.
BigInt weight_sum_minus_degree(ProblemId p, int n);

struct GenerateOptions {
  /// Refuse to hold more than this many bits of weights.
  std::uint64_t max_total_bits = std::uint64_t{1} << 33;
  bool closed_form_volume = true;
};

FamilyMember generate(ProblemId p, int n, const GenerateOptions& options = {});

struct CatalogEntry {
  std::string name;  // "X28"
  Hypersurface hypersurface;
  VarietyClass expected_class;
  SingularityClass expected_singularities = SingularityClass::Terminal;
  BigRat expected_volume;
};

std::vector<CatalogEntry> sporadic_catalog();

/// 1/(s_{n+2} - 1)^n.
BigRat kollar_pair_volume(int n);

/// (n(2g-2) vol_Z, g p_g(Z)) for the product of Z with a genus g curve.
std::pair<BigRat, BigInt> product_with_curve(const BigRat& vol_z, const BigInt& pg_z, int n, int g);

}  // namespace extremal
