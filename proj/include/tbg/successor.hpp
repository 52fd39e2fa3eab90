#pragma once

#include <functional>
#include <vector>

#include "tbg/group.hpp"
#include "tbg/laurent.hpp"

namespace tbg {

enum class ClassTag { SPlus, SZero, SMinus, U0, Um1, Um2, Ut3, Ut4, Ut5, E1, E2, E3 };
enum class TypeTag { Initial, Interior, Negative, BoundaryP, BoundaryS };

constexpr int kClassCount = 12;
int class_index(ClassTag tag);
ClassTag class_from_index(int index);
const char* class_tag_name(ClassTag tag);
const char* type_tag_name(TypeTag tag);

struct NClass {
  ClassTag tag;
  bool negated = false;
  friend bool operator==(const NClass&, const NClass&) = default;
};

struct Classification {
  TypeTag type;
  NClass cls;
  friend bool operator==(const Classification&, const Classification&) = default;
};

// Table classification of an n-reduced polynomial with non-negative leading
// coefficient. The class is a single low-to-high scan of the coefficient
// word (base row for the leading constant, one induction row per appended
// coefficient, degree-1 E overrides at non-positive prefix level); the type
// is behavioral (sign of the constant term, reducedness of P + 1).
Classification classify(const LaurentPoly& P, int n, int k);

// Signed extension to arbitrary leading sign: classify(-P) with the negated
// flag set, mirrored behavioral type.
Classification classify_general(const LaurentPoly& P, int n, int k);

// The generalized successor: P + 1 when reduced, otherwise the full
// rewriting of P + 1 with the residual X^{-1} (and matching constant)
// subtracted off. Defined for either leading sign.
LaurentPoly generalized_successor(const LaurentPoly& P, int n, int k);

// Successor within the enumerated family (non-negative leading coefficient).
LaurentPoly successor(const LaurentPoly& P, int n, int k);

// Inverse of successor: -S~(-P). P = 0 has no predecessor.
LaurentPoly predecessor(const LaurentPoly& P, int n, int k);

struct EnumeratedWord {
  LaurentPoly poly;
  Classification cls;
  long long length = 0;
};

// Streams 0, S(0), S^2(0), ... and emits every word of n-length at most
// max_length. Lengths along the stream fluctuate by one, so the walk
// continues past the budget until a long run above it certifies (together
// with the brute-force cross-checks in the tests) that no later word fits.
void enumerate_reduced(int n, int k, long long max_length,
                       const std::function<void(std::size_t index, const EnumeratedWord&)>& emit);
std::vector<EnumeratedWord> enumerate_reduced_vector(int n, int k, long long max_length);

enum class GroupStep { PlusB, MinusA, PlusBMinusA };
const char* group_step_name(GroupStep step);

struct SuccEffect {
  int length_delta;
  GroupStep step;
};

// Computed length delta and group step of P -> S(P). The per-type envelope is
// asserted: interior and initial words step +b and grow by one, negative words
// step +b and shrink by one, boundary-S words step +b at constant length, and
// boundary-P words step -a or +b-a with the +b-a branch length-preserving.
// The class alone does not pick the boundary-P branch; see succ_effect's
// definition for the verified exceptions.
SuccEffect succ_effect(const LaurentPoly& P, int n, int k);

}  // namespace tbg
