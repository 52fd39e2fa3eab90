#include "tbg/automaton.hpp"

#include <sstream>
#include <stdexcept>

#include "tbg/reduction.hpp"

namespace tbg {

namespace {

int default_depth(const GroupParams& params) { return params.k >= 3 ? 4 : 5; }

bool reduced_at(const GroupParams& params, const Word& w, int level) {
  if (w.empty()) return true;
  CoeffWord cw;
  cw.lead_degree = static_cast<int>(w.size()) - 1;
  cw.coeffs = w;
  return is_reduced_word(cw, level, params.k);
}

Word append_letter(const Word& w, long long c) {
  Word out = w;
  out.push_back(c);
  return out;
}

std::string word_text(const Word& w) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ",";
    os << w[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

int clamp_band(long long offset) {
  if (offset < -kBandClamp) return -kBandClamp;
  if (offset > kBandClamp) return kBandClamp;
  return static_cast<int>(offset);
}

LaurentPoly word_to_poly(const Word& w) {
  LaurentPoly p;
  const int d = static_cast<int>(w.size()) - 1;
  for (size_t i = 0; i < w.size(); ++i) p.set_coeff(d - static_cast<int>(i), w[i]);
  return p;
}

Word poly_to_word(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  const int hi = *p.highest_degree();
  if (*p.lowest_degree() < 0) throw std::invalid_argument("word has negative-degree terms");
  Word w(static_cast<size_t>(hi) + 1, 0);
  for (const auto& [d, c] : p.terms()) w[static_cast<size_t>(hi - d)] = c;
  return w;
}

std::string serialize_features(const StateFeatures& f) {
  std::ostringstream os;
  os << "c" << class_index(f.cls.tag) << (f.cls.negated ? "m" : "p");
  os << "T" << static_cast<int>(f.type);
  os << "|";
  if (f.small) {
    os << "w";
    for (long long c : f.small_id) os << c << ",";
  }
  os << "|";
  for (int c : f.child) os << c << ",";
  auto put_step = [&os](const ChainStep& s) {
    if (!s.exists)
      os << "-";
    else
      os << s.length_delta << "/" << static_cast<int>(s.step);
    os << ";";
  };
  os << "|";
  put_step(f.out1);
  put_step(f.out2);
  put_step(f.in1);
  put_step(f.in2);
  return os.str();
}

StateFeatures word_features(const GroupParams& params, const Word& w, int level,
                            FeatureMode mode) {
  const int k = params.k;
  StateFeatures f;
  const LaurentPoly P = word_to_poly(w);
  const Classification c = classify(P, level, k);
  f.cls = c.cls;
  f.type = c.type;
  const size_t small_limit = mode == FeatureMode::Assembly ? 2 : 1;
  f.small = w.size() <= small_limit;
  if (f.small) f.small_id = w;

  const int letters = 2 * k + 3;
  f.child.assign(static_cast<size_t>(letters), -1);
  if (!w.empty()) {
    for (int idx = 0; idx < letters; ++idx) {
      Word child = append_letter(w, idx - (k + 1));
      if (reduced_at(params, child, level + 1)) f.child[static_cast<size_t>(idx)] = 1;
    }
  }

  if (mode == FeatureMode::Assembly) {
    auto effect = [&](const LaurentPoly& p) -> ChainStep {
      SuccEffect e = succ_effect(p, level, k);
      return ChainStep{true, e.length_delta, e.step};
    };
    f.out1 = effect(P);
    const LaurentPoly s1 = successor(P, level, k);
    f.out2 = effect(s1);
    if (!P.is_zero()) {
      const LaurentPoly p1 = predecessor(P, level, k);
      f.in1 = effect(p1);
      if (!p1.is_zero()) f.in2 = effect(predecessor(p1, level, k));
    }
  }
  return f;
}

std::vector<std::vector<PolyT>> BandAutomaton::transition_matrix() const {
  const size_t n = states.size();
  std::vector<std::vector<PolyT>> M(n, std::vector<PolyT>(n));
  for (size_t from = 0; from < n; ++from) {
    for (int idx = 0; idx < letter_count(); ++idx) {
      const int to = states[from].next[static_cast<size_t>(idx)];
      if (to < 0) continue;
      long long c = letter_of(idx);
      M[static_cast<size_t>(to)][from].add_coeff(1 + static_cast<int>(c < 0 ? -c : c), 1);
    }
  }
  return M;
}

std::vector<PolyT> BandAutomaton::seed_vector() const {
  std::vector<PolyT> v(states.size());
  for (size_t s = 0; s < states.size(); ++s)
    if (states[s].seed)
      v[s].add_coeff(static_cast<int>(states[s].seed_abs), 1);
  return v;
}

BandAutomaton build_band_automaton(const GroupParams& params, int band, int depth,
                                   FeatureMode mode) {
  if (depth <= 0) depth = default_depth(params);
  const int k = params.k;
  BandAutomaton A;
  A.params = params;
  A.band = band;
  A.sample_depth = depth;
  A.mode = mode;

  constexpr size_t kStateCap = 4000;
  const int letters = 2 * k + 3;

  auto intern = [&](const Word& w) -> int {
    const int level = band + static_cast<int>(w.size()) - 1;
    StateFeatures f = word_features(params, w, level, mode);
    std::string key = serialize_features(f);
    auto it = A.index.find(key);
    if (it != A.index.end()) return it->second;
    if (A.states.size() >= kStateCap)
      throw std::logic_error("band automaton state closure exploded; fingerprint not finite");
    AutomatonState st;
    st.features = std::move(f);
    st.key = key;
    st.witness = w;
    st.next.assign(static_cast<size_t>(letters), -1);
    st.class_idx = class_index(st.features.cls.tag);
    const int id = static_cast<int>(A.states.size());
    A.states.push_back(std::move(st));
    A.index.emplace(std::move(key), id);
    return id;
  };

  for (long long c = 1; c <= k + 2; ++c) {
    Word w{c};
    if (!reduced_at(params, w, band)) continue;
    const int id = intern(w);
    A.states[static_cast<size_t>(id)].seed = true;
    A.states[static_cast<size_t>(id)].seed_abs = c;
  }

  // New states are appended while older ones are expanded, so a plain index
  // loop closes the reachable set.
  for (size_t id = 0; id < A.states.size(); ++id) {
    const Word w = A.states[id].witness;
    const int level = band + static_cast<int>(w.size()) - 1;
    for (int idx = 0; idx < letters; ++idx) {
      Word child = append_letter(w, idx - (k + 1));
      const int target = reduced_at(params, child, level + 1) ? intern(child) : -1;
      A.states[id].next[static_cast<size_t>(idx)] = target;
    }
  }

  // Consistency sweep: every reduced word up to the sample depth must agree
  // with the transitions derived from its state's witness. A mismatch means
  // the fingerprint does not determine append behavior.
  const bool clamped = band == kBandClamp || band == -kBandClamp;
  const int outward = band < 0 ? -1 : 1;
  std::map<Word, std::string> key_cache;
  auto key_for = [&](const Word& w, int level) -> const std::string& {
    auto it = key_cache.find(w);
    if (it == key_cache.end())
      it = key_cache.emplace(w, serialize_features(word_features(params, w, level, mode)))
               .first;
    return it->second;
  };
  std::vector<Word> frontier{{}};
  for (int e = 0; e <= depth; ++e) {
    std::vector<Word> next_frontier;
    for (const Word& base : frontier) {
      const bool is_root = base.empty();
      const long long lo = is_root ? 1 : -(k + 1);
      const long long hi = is_root ? k + 2 : k + 1;
      for (long long c = lo; c <= hi; ++c) {
        Word w = append_letter(base, c);
        const int level = band + static_cast<int>(w.size()) - 1;
        if (!reduced_at(params, w, level)) continue;
        const std::string& key = key_for(w, level);
        auto it = A.index.find(key);
        if (it == A.index.end())
          throw std::logic_error("band automaton misses a reduced word's state: " +
                                 word_text(w));
        const AutomatonState& st = A.states[static_cast<size_t>(it->second)];
        for (int idx = 0; idx < letters; ++idx) {
          Word child = append_letter(w, idx - (k + 1));
          const bool ok = reduced_at(params, child, level + 1);
          const int target = st.next[static_cast<size_t>(idx)];
          if (ok != (target >= 0))
            throw std::logic_error("fingerprint does not determine reducedness of append: " +
                                   word_text(w) + " letter " +
                                   std::to_string(idx - (k + 1)));
          if (!ok) continue;
          if (key_for(child, level + 1) != A.states[static_cast<size_t>(target)].key)
            throw std::logic_error("fingerprint does not determine append target: " +
                                   word_text(w) + " letter " +
                                   std::to_string(idx - (k + 1)));
        }
        if (clamped) {
          StateFeatures outer = word_features(params, w, level + outward, mode);
          if (serialize_features(outer) != key)
            throw std::logic_error("band clamp too tight at " + word_text(w));
        }
        next_frontier.push_back(std::move(w));
      }
    }
    frontier = std::move(next_frontier);
  }

  return A;
}

const BandAutomaton& AutomatonFamily::at_band(long long offset) const {
  return bands[static_cast<size_t>(clamp_band(offset) + kBandClamp)];
}

AutomatonFamily build_automaton_family(const GroupParams& params, int depth,
                                       FeatureMode mode) {
  AutomatonFamily fam;
  fam.params = params;
  fam.mode = mode;
  for (int b = -kBandClamp; b <= kBandClamp; ++b)
    fam.bands.push_back(build_band_automaton(params, b, depth, mode));
  return fam;
}

std::array<PolyT, kClassCount> class_census(const AutomatonFamily& fam, int n, int d) {
  if (d < 0) throw std::invalid_argument("negative degree");
  std::array<PolyT, kClassCount> out;
  if (n < 0) {
    out = class_census(fam, 0, d);
    for (auto& p : out) p = p.shifted(-n);
    return out;
  }
  const BandAutomaton& A = fam.at_band(static_cast<long long>(n) - d);
  std::vector<PolyT> vec = A.seed_vector();
  for (int step = 0; step < d; ++step) {
    std::vector<PolyT> nxt(vec.size());
    for (size_t from = 0; from < vec.size(); ++from) {
      if (vec[from].is_zero()) continue;
      for (int idx = 0; idx < A.letter_count(); ++idx) {
        const int to = A.states[from].next[static_cast<size_t>(idx)];
        if (to < 0) continue;
        const long long c = A.letter_of(idx);
        nxt[static_cast<size_t>(to)] +=
            vec[from].shifted(1 + static_cast<int>(c < 0 ? -c : c));
      }
    }
    vec = std::move(nxt);
  }
  const int kick = n >= d ? n - d : d - n;
  for (size_t s = 0; s < vec.size(); ++s) {
    if (vec[s].is_zero()) continue;
    out[static_cast<size_t>(A.states[s].class_idx)] += vec[s].shifted(kick);
  }
  return out;
}

std::vector<Word> enumerate_words_by_degree(const GroupParams& params, int n, int d) {
  std::vector<Word> out;
  std::vector<Word> frontier{{}};
  for (int e = 0; e <= d; ++e) {
    std::vector<Word> next_frontier;
    for (const Word& base : frontier) {
      const bool is_root = base.empty();
      const long long lo = is_root ? 1 : -(params.k + 1);
      const long long hi = is_root ? params.k + 2 : params.k + 1;
      for (long long c = lo; c <= hi; ++c) {
        Word w = append_letter(base, c);
        const int level = (n - d) + static_cast<int>(w.size()) - 1;
        if (!reduced_at(params, w, level)) continue;
        if (static_cast<int>(w.size()) - 1 == d)
          out.push_back(w);
        else
          next_frontier.push_back(w);
      }
    }
    frontier = std::move(next_frontier);
  }
  return out;
}

}  // namespace tbg
