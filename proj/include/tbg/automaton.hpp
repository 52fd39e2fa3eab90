#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tbg/group.hpp"
#include "tbg/laurent.hpp"
#include "tbg/polyt.hpp"
#include "tbg/successor.hpp"

namespace tbg {

// Coefficient word of a polynomial part, top coefficient first; empty = zero.
// A word of degree d counted at level n sits at offset n - d. Rule gating,
// class scans, and the nearby chain steps depend on the offset only through
// a clamped band, so each band gets its own bottom-append automaton.
using Word = std::vector<long long>;

inline constexpr int kBandClamp = 3;
int clamp_band(long long offset);

LaurentPoly word_to_poly(const Word& w);
Word poly_to_word(const LaurentPoly& p);

// One chain move near a word: how the length and the fiber point change.
struct ChainStep {
  bool exists = false;
  int length_delta = 0;
  GroupStep step = GroupStep::PlusB;
  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

// Two fingerprint granularities. Counting keeps just enough to drive the
// append automaton: class, type, which appends stay reduced, and the
// identity of bare constants (whose children alone see the low-degree
// class overrides). Assembly additionally keeps the identity of words of
// degree <= 1 and the two nearest chain steps on each side, which the
// canonical-representative predicate of the series assembly reads.
enum class FeatureMode { Counting, Assembly };

// Behavioral fingerprint of a word at its placement level. Words sharing a
// fingerprint are interchangeable for counting and for the coincidence
// bookkeeping of the series assembly; the build verifies this.
struct StateFeatures {
  NClass cls{ClassTag::SZero, false};
  TypeTag type = TypeTag::Interior;
  bool small = false;         // low degree; such words keep their identity
  Word small_id;              // the word itself when small, else empty
  std::vector<int> child;     // per letter: 1 when the append is reduced, -1 dead
  ChainStep out1, out2;       // steps P -> S(P) -> S^2(P)
  ChainStep in1, in2;         // steps S^-1(P) -> P and S^-2(P) -> S^-1(P)
  friend bool operator==(const StateFeatures&, const StateFeatures&) = default;
};

std::string serialize_features(const StateFeatures& f);
StateFeatures word_features(const GroupParams& params, const Word& w, int level,
                            FeatureMode mode);

struct AutomatonState {
  StateFeatures features;
  std::string key;
  Word witness;               // shortest member seen during the build
  std::vector<int> next;      // per letter: target state, -1 when not reduced
  int class_idx = 0;
  bool seed = false;          // reachable as a bare constant
  long long seed_abs = 0;     // |c| of that constant
};

// Deterministic bottom-append automaton of positive-lead reduced words in
// one band. Letters are the appendable constants c in [-(k+1), k+1].
struct BandAutomaton {
  GroupParams params{2};
  int band = 0;
  int sample_depth = 0;
  FeatureMode mode = FeatureMode::Counting;
  std::vector<AutomatonState> states;
  std::map<std::string, int> index;

  int letter_count() const { return 2 * params.k + 3; }
  long long letter_of(int idx) const { return idx - (params.k + 1); }

  // M[to][from] = sum over letters c with next[from][c] = to of t^(1+|c|).
  std::vector<std::vector<PolyT>> transition_matrix() const;
  // Seed weights t^{|c|} accumulated into the states of the bare constants.
  std::vector<PolyT> seed_vector() const;
};

// Builds the band automaton by enumerating every reduced word up to the
// sample depth, fingerprinting each, and checking that fingerprints evolve
// deterministically under appends. Any impurity is a hard error naming the
// offending words; it falsifies the fingerprint, not the sample.
BandAutomaton build_band_automaton(const GroupParams& params, int band, int depth,
                                   FeatureMode mode);

struct AutomatonFamily {
  GroupParams params{2};
  FeatureMode mode = FeatureMode::Counting;
  std::vector<BandAutomaton> bands;  // index i holds band i - kBandClamp

  const BandAutomaton& at_band(long long offset) const;
};

// depth 0 picks a per-k default.
AutomatonFamily build_automaton_family(const GroupParams& params, int depth = 0,
                                       FeatureMode mode = FeatureMode::Counting);

// Length polynomials of the reduced words of exact degree d at level n,
// bucketed by class. The zero polynomial has no degree and is excluded;
// callers that need it account for it separately.
std::array<PolyT, kClassCount> class_census(const AutomatonFamily& fam, int n, int d);

// Independent oracle: direct enumeration of the same words by depth-first
// search over appends, with no automaton involved.
std::vector<Word> enumerate_words_by_degree(const GroupParams& params, int n, int d);

}  // namespace tbg
