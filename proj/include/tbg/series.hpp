#pragma once

#include <stdexcept>
#include <vector>

#include "tbg/automaton.hpp"
#include "tbg/group.hpp"
#include "tbg/polyt.hpp"
#include "tbg/successor.hpp"

namespace tbg {

// Class-indexed vectors follow the order of class_index: S+, S0, S-, U0,
// U-1, U-2, Ut-3, Ut-4, Ut-5, E1, E2, E3.
using ClassVector = std::array<PolyT, kClassCount>;
using ClassSeries = std::array<RationalT, kClassCount>;
using TransferMatrix = std::array<std::array<PolyT, kClassCount>, kClassCount>;

// Degree-0 class weights of one level regime, plus the degree-1 E fragment
// that seeds the E recursion. Entries are level-normalized: callers apply
// the t^|n| placement factor themselves. The S0 unit of the positive regime
// stands for the zero polynomial; degree-filtered censuses exclude it, the
// series assembly accounts for it separately.
struct BaseVectors {
  ClassVector d0;
  ClassVector d1_E;
};
BaseVectors base_vectors(int k, bool positive_level);

// Literal 12x12 one-step matrix of the class recursion, kept exactly as
// transcribed. Its U rows are known to overcount multi-branch words, so the
// census routines below count with the band automata instead; the matrix
// stays for the recursion-shape tests. Throws std::logic_error if an entry
// of the summed S rows fails to clear its (t-1) denominator.
TransferMatrix transfer_matrix(int k);

ClassVector apply_transfer(const TransferMatrix& M, const ClassVector& v);

// Exact class counts of the reduced words of degree d at level n, weighted
// t^{L_n}; computed on the cached counting automaton family.
ClassVector class_counts_by_degree(int k, int n, int d);

// Closed-form sum of class_counts_by_degree over all degrees at one level.
ClassSeries summed_class_series(int k, int n);

enum class SeriesMode { Sphere, Ball };

// Raised when the assembled series disagrees with the breadth-first oracle.
class CertificationError : public std::runtime_error {
 public:
  CertificationError(int radius_, Int expected_, Int got_);
  int radius;
  Int expected;
  Int got;
};

// Coefficients are always expanded at least this far for reporting.
inline constexpr int kSeriesPreviewOrder = 16;

struct SeriesResult {
  int k = 2;
  SeriesMode mode = SeriesMode::Sphere;
  RationalT series;
  int verified_radius = -1;       // -1 when certification was skipped
  std::vector<Int> coefficients;  // orders 0..max(verify_to, kSeriesPreviewOrder)
};

// Assembles the rational growth series of the group with parameter k and
// certifies its coefficients against bfs_ball up to verify_to (skipped when
// unchecked is set). Sphere mode counts spheres, ball mode cumulative balls.
SeriesResult assemble_growth_series(int k, int verify_to,
                                    SeriesMode mode = SeriesMode::Sphere,
                                    bool unchecked = false);

}  // namespace tbg
