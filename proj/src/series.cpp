#include "tbg/series.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "tbg/laurent.hpp"

namespace tbg {

namespace {

PolyT tpow(int e) { return PolyT::monomial(e, 1); }

PolyT tsum(int lo, int hi) {
  PolyT p;
  for (int e = lo; e <= hi; ++e) p.add_coeff(e, 1);
  return p;
}

using Block = std::array<std::array<PolyT, 3>, 3>;

// t * entry / (t - 1), the shared prefactor of the summed S rows.
PolyT tfrac(const PolyT& entry) {
  const PolyT tm1 = tpow(1) - tpow(0);
  try {
    return entry.shifted(1).divided_exact(tm1);
  } catch (const std::domain_error&) {
    throw std::logic_error("transfer matrix entry fails to clear (t-1)");
  }
}

PolyT fm_t(int a) { return tpow(a) - tpow(1); }
PolyT fm_1(int a) { return tpow(a) - tpow(0); }

Block frac_block(std::array<std::array<PolyT, 3>, 3> numers) {
  Block b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = tfrac(numers[i][j]);
  return b;
}

Block block_ee(int k) {
  Block b{};
  b[0][1] = tpow(k + 1);
  b[1][0] = tpow(k);
  b[1][2] = tpow(k + 1);
  b[2][1] = tpow(k);
  return b;
}

Block block_us(int k) {
  Block b{};
  b[0][0] = tpow(k + 1);
  b[0][1] = tpow(k + 1);
  b[0][2] = tpow(k);
  b[2][0] = tpow(k + 2);
  b[2][1] = tpow(k + 2);
  b[2][2] = tpow(k + 2);
  return b;
}

Block block_uu(int k) {
  Block b{};
  b[0][1] = tpow(k);
  b[1][0] = tpow(k + 1);
  b[1][2] = tpow(k);
  b[2][1] = tpow(k + 1);
  return b;
}

Block add_blocks(Block a, const Block& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] += b[i][j];
  return a;
}

Block sub_blocks(Block a, const Block& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] -= b[i][j];
  return a;
}

// The middle target class does not survive the fold, so its row is dropped.
Block drop_middle_row(Block a) {
  a[1] = {};
  return a;
}

const AutomatonFamily& cached_family(int k, FeatureMode mode) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, AutomatonFamily> cache;
  const std::pair<int, int> key{k, static_cast<int>(mode)};
  std::scoped_lock lock(mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, build_automaton_family(GroupParams(k), 0, mode)).first;
  return it->second;
}

std::vector<PolyT> apply_band(const BandAutomaton& A, const std::vector<PolyT>& v) {
  std::vector<PolyT> nxt(v.size());
  for (size_t from = 0; from < v.size(); ++from) {
    if (v[from].is_zero()) continue;
    for (int idx = 0; idx < A.letter_count(); ++idx) {
      const int to = A.states[from].next[static_cast<size_t>(idx)];
      if (to < 0) continue;
      const long long c = A.letter_of(idx);
      nxt[static_cast<size_t>(to)] +=
          v[from].shifted(1 + static_cast<int>(c < 0 ? -c : c));
    }
  }
  return nxt;
}

// (I - t M)^{-1} s on the inner clamped band, the tail of every degree sum.
const PolySolve& cached_tail_solve(int k) {
  static std::mutex mu;
  static std::map<int, PolySolve> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) {
    const BandAutomaton& A =
        cached_family(k, FeatureMode::Counting).at_band(-kBandClamp);
    const auto M = A.transition_matrix();
    const size_t n = A.states.size();
    std::vector<std::vector<PolyT>> sys(n, std::vector<PolyT>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (i == j) sys[i][j] = PolyT::one();
        sys[i][j] -= M[i][j].shifted(1);
      }
    it = cache.emplace(k, solve_poly_system(std::move(sys), A.seed_vector())).first;
  }
  return it->second;
}

}  // namespace

BaseVectors base_vectors(int k, bool positive_level) {
  GroupParams params(k);
  (void)params;
  BaseVectors v{};
  if (positive_level) {
    v.d0[static_cast<size_t>(class_index(ClassTag::SPlus))] = tsum(1, k - 1);
    v.d0[static_cast<size_t>(class_index(ClassTag::SZero))] = tpow(0);
    v.d0[static_cast<size_t>(class_index(ClassTag::U0))] = tpow(k);
    v.d0[static_cast<size_t>(class_index(ClassTag::Um2))] = tpow(k + 1);
  } else {
    v.d0[static_cast<size_t>(class_index(ClassTag::SPlus))] = tsum(1, k);
    v.d0[static_cast<size_t>(class_index(ClassTag::Ut3))] = tpow(k + 1);
    v.d0[static_cast<size_t>(class_index(ClassTag::Ut5))] = tpow(k + 2);
    v.d1_E[static_cast<size_t>(class_index(ClassTag::E1))] = tpow(k + 2);
    v.d1_E[static_cast<size_t>(class_index(ClassTag::E3))] = tpow(k + 1);
  }
  return v;
}

TransferMatrix transfer_matrix(int k) {
  GroupParams params(k);
  (void)params;

  const Block A = add_blocks(frac_block({{{fm_t(k), fm_t(k), fm_t(k - 1)},
                                          {fm_1(1), fm_1(1), fm_1(1)},
                                          {fm_1(k), fm_1(k), fm_1(k - 1)}}}),
                             block_us(k));
  const std::array<std::array<PolyT, 3>, 3> bc_numers{
      {{fm_t(k), fm_t(k - 1), fm_t(k - 1)},
       {fm_1(1), fm_1(1), fm_1(1)},
       {fm_1(k), fm_1(k - 1), fm_1(k - 1)}}};
  const Block B = add_blocks(frac_block(bc_numers), drop_middle_row(block_uu(k)));
  const Block C = add_blocks(frac_block(bc_numers), drop_middle_row(block_uu(k)));
  const Block D = sub_blocks(frac_block({{{fm_t(k), fm_t(k), fm_t(k)},
                                          {PolyT::zero(), fm_1(1), fm_1(1)},
                                          {fm_t(k - 1), fm_t(k - 1), fm_t(k)}}}),
                             block_ee(k));

  TransferMatrix M{};
  auto place = [&M](int rb, int cb, const Block& b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        M[static_cast<size_t>(3 * rb + i)][static_cast<size_t>(3 * cb + j)] = b[i][j];
  };
  place(0, 0, A);
  place(0, 1, B);
  place(0, 2, C);
  place(0, 3, D);
  place(1, 0, block_us(k));
  place(1, 1, block_uu(k));
  place(2, 2, block_uu(k));
  place(3, 3, block_ee(k));
  return M;
}

ClassVector apply_transfer(const TransferMatrix& M, const ClassVector& v) {
  ClassVector out{};
  for (size_t i = 0; i < kClassCount; ++i)
    for (size_t j = 0; j < kClassCount; ++j) {
      if (M[i][j].is_zero() || v[j].is_zero()) continue;
      out[i] += M[i][j] * v[j];
    }
  return out;
}

ClassVector class_counts_by_degree(int k, int n, int d) {
  return class_census(cached_family(k, FeatureMode::Counting), n, d);
}

ClassSeries summed_class_series(int k, int n) {
  if (n < 0) {
    ClassSeries base = summed_class_series(k, 0);
    const RationalT shift = RationalT::from_poly(tpow(-n));
    for (auto& entry : base) entry = entry * shift;
    return base;
  }
  const AutomatonFamily& fam = cached_family(k, FeatureMode::Counting);

  std::array<PolyT, kClassCount> finite{};
  for (int d = 0; d <= n + 2; ++d) {
    const auto c = class_census(fam, n, d);
    for (size_t i = 0; i < kClassCount; ++i) finite[i] += c[i];
  }

  // Degrees d >= n+3 all live in the inner clamped band: the tail is
  // t^3 M^{n+3} (I - tM)^{-1} s, projected to classes.
  const BandAutomaton& A = fam.at_band(-static_cast<long long>(kBandClamp));
  const PolySolve& tail = cached_tail_solve(k);
  std::vector<PolyT> v = tail.numerators;
  for (int step = 0; step < n + 3; ++step) v = apply_band(A, v);
  std::array<PolyT, kClassCount> tails{};
  for (size_t s = 0; s < v.size(); ++s) {
    if (v[s].is_zero()) continue;
    tails[static_cast<size_t>(A.states[s].class_idx)] += v[s];
  }

  ClassSeries out;
  for (size_t i = 0; i < kClassCount; ++i) {
    out[i] = RationalT::from_poly(finite[i]);
    if (!tails[i].is_zero()) out[i] += RationalT(tails[i].shifted(3), tail.denominator);
  }

  // Certify the closed form against plain partial sums.
  const int check_to = n + 10;
  std::array<PolyT, kClassCount> partial{};
  for (int d = 0; d <= check_to; ++d) {
    const auto c = class_census(fam, n, d);
    for (size_t i = 0; i < kClassCount; ++i) partial[i] += c[i];
  }
  for (size_t i = 0; i < kClassCount; ++i) {
    if (expand_coeffs(out[i], check_to) != partial[i].expand(check_to))
      throw std::logic_error("summed class series disagrees with its partial sums");
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Series assembly. Every group element of level n splits as a canonical pair
// (P, Qbar) with signs, drawn from the level-n chain and the level-0 chain.
// A candidate pair is counted iff no equivalent pair precedes it in the order
// (weight, sign rank, chain index, chain index); equivalence moves shift both
// chain indices by at most two, so the predicate below reads only a word's
// nearby chain steps. The calibration pass checks the predicate against
// explicit enumeration, and the finished series is certified against the
// breadth-first oracle.
// ---------------------------------------------------------------------------

struct V2s {
  long long x0 = 0;
  long long x1 = 0;
};

V2s step_vec(GroupStep s, bool swapped) {
  long long x0 = 0;
  long long x1 = 0;
  switch (s) {
    case GroupStep::PlusB: x1 = 1; break;
    case GroupStep::MinusA: x0 = -1; break;
    case GroupStep::PlusBMinusA: x0 = -1; x1 = 1; break;
  }
  return swapped ? V2s{x1, x0} : V2s{x0, x1};
}

struct MoveWindow {
  bool is_zero = false;
  bool is_unit = false;  // the constant 1, predecessor of which is the zero word
  bool is_two = false;   // the constant 2, two steps past the zero word
  ChainStep out1, out2, in1, in2;
};

MoveWindow make_window(const StateFeatures& f) {
  MoveWindow w;
  w.is_zero = f.small && f.small_id.empty();
  w.is_unit = f.small && f.small_id == Word{1};
  w.is_two = f.small && f.small_id == Word{2};
  w.out1 = f.out1;
  w.out2 = f.out2;
  w.in1 = f.in1;
  w.in2 = f.in2;
  return w;
}

std::string window_key(const MoveWindow& w) {
  std::ostringstream os;
  os << w.is_zero << w.is_unit << w.is_two;
  auto put = [&os](const ChainStep& s) {
    if (!s.exists)
      os << "|-";
    else
      os << "|" << s.length_delta << "/" << static_cast<int>(s.step);
  };
  put(w.out1);
  put(w.out2);
  put(w.in1);
  put(w.in2);
  return os.str();
}

struct MoveDelta {
  bool ok = false;
  V2s dg;
  long long dw = 0;
};

// Chain-index move by d on one side; sigma < 0 forbids landing on the zero
// word, which only the positive sign represents.
MoveDelta side_move(const MoveWindow& w, int d, int sigma, bool swapped) {
  MoveDelta m;
  m.ok = true;
  auto fwd = [&](const ChainStep& s) {
    const V2s v = step_vec(s.step, swapped);
    m.dg.x0 += v.x0;
    m.dg.x1 += v.x1;
    m.dw += s.length_delta;
  };
  auto bwd = [&](const ChainStep& s) {
    const V2s v = step_vec(s.step, swapped);
    m.dg.x0 -= v.x0;
    m.dg.x1 -= v.x1;
    m.dw -= s.length_delta;
  };
  switch (d) {
    case 0:
      break;
    case 1:
      fwd(w.out1);
      break;
    case 2:
      fwd(w.out1);
      fwd(w.out2);
      break;
    case -1:
      if (!w.in1.exists || (sigma < 0 && w.is_unit)) {
        m.ok = false;
        break;
      }
      bwd(w.in1);
      break;
    case -2:
      if (!w.in1.exists || !w.in2.exists || (sigma < 0 && w.is_two)) {
        m.ok = false;
        break;
      }
      bwd(w.in1);
      bwd(w.in2);
      break;
    default:
      m.ok = false;
      break;
  }
  return m;
}

bool canonical_candidate(const MoveWindow& P, const MoveWindow& Q, int sp, int sq) {
  for (int di = -2; di <= 2; ++di) {
    const MoveDelta mp = side_move(P, di, sp, false);
    if (!mp.ok) continue;
    for (int dj = -2; dj <= 2; ++dj) {
      if (di == 0 && dj == 0) continue;
      const MoveDelta mq = side_move(Q, dj, sq, true);
      if (!mq.ok) continue;
      if (sp * mp.dg.x0 + sq * mq.dg.x0 != 0) continue;
      if (sp * mp.dg.x1 + sq * mq.dg.x1 != 0) continue;
      const long long dw = mp.dw + mq.dw;
      if (dw < 0) return false;
      if (dw == 0 && (di < 0 || (di == 0 && dj < 0))) return false;
    }
  }
  return true;
}

long long to_ll(const Int& v) {
  static const Int bound = Int(1) << 62;
  if (v >= bound || v <= -bound) throw std::logic_error("fiber point exceeds range");
  return v.convert_to<long long>();
}

struct ChainData {
  std::vector<long long> len;
  std::vector<V2s> g;
  std::vector<MoveWindow> win;
};

ChainData collect_chain(const GroupParams& params, int n, long long wcap) {
  ChainData side;
  enumerate_reduced(n, params.k, wcap, [&](std::size_t, const EnumeratedWord& e) {
    const Vec2 x = evaluate_rep(params, e.poly);
    side.len.push_back(e.length);
    side.g.push_back(V2s{to_ll(x.x0), to_ll(x.x1)});
    side.win.push_back(make_window(
        word_features(params, poly_to_word(e.poly), n, FeatureMode::Assembly)));
  });
  return side;
}

struct Cand {
  long long x0 = 0;
  long long x1 = 0;
  int32_t w = 0;
  int8_t q = 0;
  int32_t ip = 0;
  int32_t iq = 0;
};

bool cand_less(const Cand& a, const Cand& b) {
  if (a.x0 != b.x0) return a.x0 < b.x0;
  if (a.x1 != b.x1) return a.x1 < b.x1;
  if (a.w != b.w) return a.w < b.w;
  if (a.q != b.q) return a.q < b.q;
  if (a.ip != b.ip) return a.ip < b.ip;
  return a.iq < b.iq;
}

std::string cand_text(const Cand& c, int n) {
  std::ostringstream os;
  os << "level " << n << " point (" << c.x0 << "," << c.x1 << ") weight " << c.w
     << " quadrant " << static_cast<int>(c.q) << " indices (" << c.ip << "," << c.iq
     << ")";
  return os.str();
}

// Checks the canonicality predicate, the pair representation, and the weight
// minima against explicit enumeration; any disagreement is a hard error.
void verify_assembly_predicate(const GroupParams& params, const BallTable* oracle) {
  const long long wcal = params.k == 2 ? 12 : 10;
  const ChainData q0 = collect_chain(params, 0, wcal);

  std::vector<size_t> by_len(q0.len.size());
  for (size_t i = 0; i < by_len.size(); ++i) by_len[i] = i;
  std::stable_sort(by_len.begin(), by_len.end(),
                   [&](size_t a, size_t b) { return q0.len[a] < q0.len[b]; });

  for (int n = 0; n <= 4; ++n) {
    const ChainData pn_local = n == 0 ? ChainData{} : collect_chain(params, n, wcal);
    const ChainData& pn = n == 0 ? q0 : pn_local;

    std::vector<Cand> cands;
    for (size_t ip = 0; ip < pn.len.size(); ++ip) {
      const long long rem = wcal - pn.len[ip];
      if (rem < 0) continue;
      for (size_t pos = 0; pos < by_len.size(); ++pos) {
        const size_t iq = by_len[pos];
        if (q0.len[iq] > rem) break;
        for (int8_t q = 0; q < 4; ++q) {
          const int sp = (q & 2) ? -1 : 1;
          const int sq = (q & 1) ? -1 : 1;
          if (sp < 0 && ip == 0) continue;
          if (sq < 0 && iq == 0) continue;
          Cand c;
          c.x0 = sp * pn.g[ip].x0 + sq * q0.g[iq].x1;
          c.x1 = sp * pn.g[ip].x1 + sq * q0.g[iq].x0;
          c.w = static_cast<int32_t>(pn.len[ip] + q0.len[iq]);
          c.q = q;
          c.ip = static_cast<int32_t>(ip);
          c.iq = static_cast<int32_t>(iq);
          cands.push_back(c);
        }
      }
    }
    std::sort(cands.begin(), cands.end(), cand_less);

    for (size_t lo = 0; lo < cands.size();) {
      size_t hi = lo;
      while (hi < cands.size() && cands[hi].x0 == cands[lo].x0 &&
             cands[hi].x1 == cands[lo].x1)
        ++hi;
      const Cand& min = cands[lo];
      if (oracle && min.w <= oracle->radius) {
        const GroupElement el{Vec2{Int(min.x0), Int(min.x1)}, Int(n)};
        auto it = oracle->distances.find(el);
        if (it == oracle->distances.end() || it->second != min.w)
          throw std::logic_error("candidate minimum disagrees with the oracle at " +
                                 cand_text(min, n));
      }
      for (size_t i = lo; i < hi; ++i) {
        const Cand& c = cands[i];
        const bool actual = i == lo;
        const bool predicted =
            canonical_candidate(pn.win[static_cast<size_t>(c.ip)],
                                q0.win[static_cast<size_t>(c.iq)],
                                (c.q & 2) ? -1 : 1, (c.q & 1) ? -1 : 1);
        if (actual != predicted)
          throw std::logic_error("canonicality predicate disagrees with enumeration at " +
                                 cand_text(c, n));
      }
      lo = hi;
    }

    if (oracle) {
      const long long lim = std::min<long long>(wcal, oracle->radius);
      for (const auto& [el, dist] : oracle->distances) {
        if (el.n != n || dist > lim) continue;
        Cand probe;
        probe.x0 = to_ll(el.x.x0);
        probe.x1 = to_ll(el.x.x1);
        probe.w = std::numeric_limits<int32_t>::min();
        auto it = std::lower_bound(cands.begin(), cands.end(), probe, cand_less);
        if (it == cands.end() || it->x0 != probe.x0 || it->x1 != probe.x1 ||
            it->w != dist)
          throw std::logic_error("group element missed by the candidate pairs at " +
                                 cand_text(probe, n));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Truncated census series per fingerprint window, the bilinear contraction,
// and the exact rational reconstruction of the contracted series.
// ---------------------------------------------------------------------------

using Series = std::vector<Int>;  // coefficient vector, orders 0..N

void add_shifted(Series& a, const Series& b, int shift) {
  const int N = static_cast<int>(a.size()) - 1;
  for (int e = 0; e < static_cast<int>(b.size()) && e + shift <= N; ++e)
    if (!b[static_cast<size_t>(e)].is_zero())
      a[static_cast<size_t>(e + shift)] += b[static_cast<size_t>(e)];
}

bool all_zero(const std::vector<Series>& v) {
  for (const Series& s : v)
    for (const Int& c : s)
      if (!c.is_zero()) return false;
  return true;
}

std::vector<Series> apply_band_series(const BandAutomaton& A,
                                      const std::vector<Series>& v, int extra_shift) {
  const size_t N1 = v.empty() ? 1 : v.front().size();
  std::vector<Series> nxt(v.size(), Series(N1));
  for (size_t from = 0; from < v.size(); ++from) {
    for (int idx = 0; idx < A.letter_count(); ++idx) {
      const int to = A.states[from].next[static_cast<size_t>(idx)];
      if (to < 0) continue;
      const long long c = A.letter_of(idx);
      add_shifted(nxt[static_cast<size_t>(to)], v[from],
                  1 + static_cast<int>(c < 0 ? -c : c) + extra_shift);
    }
  }
  return nxt;
}

std::vector<Series> seed_series(const BandAutomaton& A, int N) {
  std::vector<Series> v(A.states.size(), Series(static_cast<size_t>(N) + 1));
  for (size_t s = 0; s < A.states.size(); ++s)
    if (A.states[s].seed && A.states[s].seed_abs <= N)
      v[s][static_cast<size_t>(A.states[s].seed_abs)] += 1;
  return v;
}

struct GroupAcc {
  MoveWindow win;
  Series ser;
};
using GroupMap = std::map<std::string, GroupAcc>;

void add_to_group(GroupMap& m, const MoveWindow& win, const Series& ser, int shift,
                  int N) {
  auto [it, inserted] = m.try_emplace(window_key(win));
  if (inserted) {
    it->second.win = win;
    it->second.ser.assign(static_cast<size_t>(N) + 1, Int(0));
  }
  add_shifted(it->second.ser, ser, shift);
}

void add_band_states(GroupMap& m, const BandAutomaton& A, const std::vector<Series>& v,
                     int shift, int N) {
  for (size_t s = 0; s < v.size(); ++s)
    add_to_group(m, make_window(A.states[s].features), v[s], shift, N);
}

MoveWindow zero_window(const GroupParams& params, int level) {
  return make_window(word_features(params, Word{}, level, FeatureMode::Assembly));
}

// Census of the level-0 chain: degree d sits in band -d, clamped inward.
GroupMap level_zero_groups(const GroupParams& params, const AutomatonFamily& fam,
                           int N) {
  GroupMap m;

  const BandAutomaton& A0 = fam.at_band(0);
  add_band_states(m, A0, seed_series(A0, N), 0, N);

  for (int b : {-1, -2}) {
    const BandAutomaton& A = fam.at_band(b);
    std::vector<Series> v = seed_series(A, N);
    for (int step = 0; step < -b; ++step) v = apply_band_series(A, v, 0);
    add_band_states(m, A, v, -b, N);
  }

  const BandAutomaton& A3 = fam.at_band(-kBandClamp);
  std::vector<Series> v = seed_series(A3, N);
  for (int d = 1; !all_zero(v); ++d) {
    v = apply_band_series(A3, v, 1);  // running factor t^d
    if (d >= kBandClamp) add_band_states(m, A3, v, 0, N);
  }

  Series unit(static_cast<size_t>(N) + 1);
  unit[0] = 1;
  add_to_group(m, zero_window(params, 0), unit, 0, N);
  return m;
}

// Sum of the level-n chain censuses over all n >= 1.
GroupMap positive_level_groups(const GroupParams& params, const AutomatonFamily& fam,
                               int N) {
  GroupMap m;

  for (int b = -kBandClamp + 1; b <= kBandClamp - 1; ++b) {
    const BandAutomaton& A = fam.at_band(b);
    const int j0 = std::max(1, b) - b;
    std::vector<Series> v = seed_series(A, N);
    for (int j = 0; j < j0; ++j) v = apply_band_series(A, v, 0);
    while (!all_zero(v)) {
      add_band_states(m, A, v, b < 0 ? -b : b, N);
      v = apply_band_series(A, v, 0);
    }
  }

  {
    // Outer clamped band: every degree occurs at all levels n >= d+3, so the
    // plain degree sum picks up a factor t^3/(1-t).
    const BandAutomaton& A = fam.at_band(kBandClamp);
    std::vector<Series> v = seed_series(A, N);
    std::vector<Series> w(A.states.size(), Series(static_cast<size_t>(N) + 1));
    while (!all_zero(v)) {
      for (size_t s = 0; s < v.size(); ++s) add_shifted(w[s], v[s], 0);
      v = apply_band_series(A, v, 0);
    }
    for (Series& s : w) {
      Series out(static_cast<size_t>(N) + 1);
      Int run = 0;
      for (int r = kBandClamp; r <= N; ++r) {
        run += s[static_cast<size_t>(r - kBandClamp)];
        out[static_cast<size_t>(r)] = run;
      }
      s = std::move(out);
    }
    for (size_t s = 0; s < w.size(); ++s)
      add_to_group(m, make_window(A.states[s].features), w[s], 0, N);
  }

  {
    // Inner clamped band: degree d >= 4 contributes at levels 1..d-3, a
    // factor t^3 + ... + t^{d-1}; split as prefix sums of M^d s and (tM)^d s.
    const BandAutomaton& A = fam.at_band(-kBandClamp);
    std::vector<Series> w1(A.states.size(), Series(static_cast<size_t>(N) + 1));
    std::vector<Series> w2 = w1;
    std::vector<Series> v1 = seed_series(A, N);
    std::vector<Series> v2 = v1;
    for (int d = 1; !all_zero(v1); ++d) {
      v1 = apply_band_series(A, v1, 0);
      v2 = apply_band_series(A, v2, 1);
      if (d >= 4) {
        for (size_t s = 0; s < v1.size(); ++s) {
          add_shifted(w1[s], v1[s], 0);
          add_shifted(w2[s], v2[s], 0);
        }
      }
    }
    for (size_t s = 0; s < w1.size(); ++s) {
      Series out(static_cast<size_t>(N) + 1);
      Int run1 = 0;
      Int run2 = 0;
      for (int r = 0; r <= N; ++r) {
        if (r >= kBandClamp) run1 += w1[s][static_cast<size_t>(r - kBandClamp)];
        run2 += w2[s][static_cast<size_t>(r)];
        out[static_cast<size_t>(r)] = run1 - run2;
      }
      add_to_group(m, make_window(A.states[s].features), out, 0, N);
    }
  }

  Series zeros(static_cast<size_t>(N) + 1);
  for (int r = 1; r <= N; ++r) zeros[static_cast<size_t>(r)] = 1;
  add_to_group(m, zero_window(params, 1), zeros, 0, N);
  return m;
}

Series bilinear(const GroupMap& left, const GroupMap& right, int N) {
  Series F(static_cast<size_t>(N) + 1);
  for (int sp : {1, -1}) {
    for (int sq : {1, -1}) {
      for (const auto& [ka, ga] : left) {
        if (ga.win.is_zero && sp < 0) continue;
        Series inner(static_cast<size_t>(N) + 1);
        bool any = false;
        for (const auto& [kb, gb] : right) {
          if (gb.win.is_zero && sq < 0) continue;
          if (!canonical_candidate(ga.win, gb.win, sp, sq)) continue;
          add_shifted(inner, gb.ser, 0);
          any = true;
        }
        if (!any) continue;
        for (int e = 0; e <= N; ++e) {
          const Int& ce = ga.ser[static_cast<size_t>(e)];
          if (ce.is_zero()) continue;
          for (int f = 0; e + f <= N; ++f) {
            const Int& cf = inner[static_cast<size_t>(f)];
            if (!cf.is_zero()) F[static_cast<size_t>(e + f)] += ce * cf;
          }
        }
      }
    }
  }
  return F;
}

// Minimal rational function reproducing every computed coefficient; the fit
// is re-verified with exact integer arithmetic over the full range.
std::pair<PolyT, PolyT> fit_rational(const std::vector<Int>& F) {
  using Rat = boost::multiprecision::cpp_rational;
  const int N = static_cast<int>(F.size()) - 1;
  const int budget = (N - 44) / 2;
  for (int dd = 0; dd <= budget; ++dd) {
    const int dn = dd + 4;
    const int first = dn + 1;
    const int rows = std::min(N - dn, dd + 24);
    std::vector<std::vector<Rat>> aug(static_cast<size_t>(rows),
                                      std::vector<Rat>(static_cast<size_t>(dd) + 1));
    for (int r = 0; r < rows; ++r) {
      const int i = first + r;
      for (int j = 1; j <= dd; ++j)
        aug[static_cast<size_t>(r)][static_cast<size_t>(j - 1)] =
            Rat(F[static_cast<size_t>(i - j)]);
      aug[static_cast<size_t>(r)][static_cast<size_t>(dd)] =
          -Rat(F[static_cast<size_t>(i)]);
    }

    std::vector<int> pivot_row(static_cast<size_t>(dd), -1);
    int rank = 0;
    for (int c = 0; c < dd && rank < rows; ++c) {
      int p = -1;
      for (int r = rank; r < rows; ++r)
        if (aug[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
          p = r;
          break;
        }
      if (p < 0) continue;
      std::swap(aug[static_cast<size_t>(p)], aug[static_cast<size_t>(rank)]);
      const Rat piv = aug[static_cast<size_t>(rank)][static_cast<size_t>(c)];
      for (int j = c; j <= dd; ++j) aug[static_cast<size_t>(rank)][static_cast<size_t>(j)] /= piv;
      for (int r = 0; r < rows; ++r) {
        if (r == rank) continue;
        const Rat f = aug[static_cast<size_t>(r)][static_cast<size_t>(c)];
        if (f == 0) continue;
        for (int j = c; j <= dd; ++j)
          aug[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
              f * aug[static_cast<size_t>(rank)][static_cast<size_t>(j)];
      }
      pivot_row[static_cast<size_t>(c)] = rank;
      ++rank;
    }
    bool inconsistent = false;
    for (int r = rank; r < rows; ++r)
      if (aug[static_cast<size_t>(r)][static_cast<size_t>(dd)] != 0) inconsistent = true;
    if (inconsistent) continue;

    std::vector<Rat> x(static_cast<size_t>(dd));
    for (int c = 0; c < dd; ++c)
      if (pivot_row[static_cast<size_t>(c)] >= 0)
        x[static_cast<size_t>(c)] =
            aug[static_cast<size_t>(pivot_row[static_cast<size_t>(c)])]
               [static_cast<size_t>(dd)];

    Int common = 1;
    for (const Rat& v : x) {
      const Int q = Int(boost::multiprecision::denominator(v));
      common = common / boost::multiprecision::gcd(common, q) * q;
    }
    std::vector<Int> den(static_cast<size_t>(dd) + 1);
    den[0] = common;
    for (int j = 1; j <= dd; ++j) {
      const Rat& v = x[static_cast<size_t>(j - 1)];
      den[static_cast<size_t>(j)] = Int(boost::multiprecision::numerator(v)) *
                                    (common / Int(boost::multiprecision::denominator(v)));
    }

    bool ok = true;
    for (int i = first; i <= N && ok; ++i) {
      Int acc = 0;
      for (int j = 0; j <= dd && j <= i; ++j)
        acc += den[static_cast<size_t>(j)] * F[static_cast<size_t>(i - j)];
      ok = acc.is_zero();
    }
    if (!ok) continue;

    PolyT denp;
    for (int j = 0; j <= dd; ++j) denp.add_coeff(j, den[static_cast<size_t>(j)]);
    PolyT nump;
    for (int i = 0; i <= dn; ++i) {
      Int acc = 0;
      for (int j = 0; j <= dd && j <= i; ++j)
        acc += den[static_cast<size_t>(j)] * F[static_cast<size_t>(i - j)];
      nump.add_coeff(i, acc);
    }
    return {nump, denp};
  }
  throw std::logic_error("assembled coefficients admit no rational form within budget");
}

}  // namespace

CertificationError::CertificationError(int radius_, Int expected_, Int got_)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "series certification failed at radius " << radius_ << ": oracle "
           << expected_ << ", series " << got_;
        return os.str();
      }()),
      radius(radius_),
      expected(std::move(expected_)),
      got(std::move(got_)) {}

SeriesResult assemble_growth_series(int k, int verify_to, SeriesMode mode,
                                    bool unchecked) {
  GroupParams params(k);
  if (verify_to < 0) throw std::invalid_argument("negative verification radius");

  const AutomatonFamily& fam = cached_family(k, FeatureMode::Assembly);
  std::optional<BallTable> oracle;
  if (!unchecked) oracle.emplace(bfs_ball(params, verify_to));
  verify_assembly_predicate(params, oracle ? &*oracle : nullptr);

  const int N = std::max(240, 4 * verify_to);
  const GroupMap psi = level_zero_groups(params, fam, N);
  const GroupMap sigma = positive_level_groups(params, fam, N);
  const Series d0 = bilinear(psi, psi, N);
  const Series ds = bilinear(sigma, psi, N);
  Series sphere(static_cast<size_t>(N) + 1);
  for (int r = 0; r <= N; ++r)
    sphere[static_cast<size_t>(r)] =
        d0[static_cast<size_t>(r)] + 2 * ds[static_cast<size_t>(r)];

  auto [nump, denp] = fit_rational(sphere);
  RationalT series(std::move(nump), std::move(denp));
  if (expand_coeffs(series, N) != sphere)
    throw std::logic_error("rational reconstruction fails to reproduce the series");
  if (series.numerator().degree() + series.denominator().degree() + 40 > N)
    throw std::logic_error("rational reconstruction margin too small");

  if (mode == SeriesMode::Ball)
    series = series * RationalT(PolyT::one(), tpow(0) - tpow(1));

  const int preview = std::max(verify_to, kSeriesPreviewOrder);
  std::vector<Int> coeffs = expand_coeffs(series, preview);
  if (!unchecked) {
    for (int r = 0; r <= verify_to; ++r) {
      const Int want = mode == SeriesMode::Sphere
                           ? Int(oracle->sphere_sizes[static_cast<size_t>(r)])
                           : Int(oracle->ball_sizes[static_cast<size_t>(r)]);
      if (coeffs[static_cast<size_t>(r)] != want)
        throw CertificationError(r, want, coeffs[static_cast<size_t>(r)]);
    }
  }

  SeriesResult out;
  out.k = k;
  out.mode = mode;
  out.series = std::move(series);
  out.verified_radius = unchecked ? -1 : verify_to;
  out.coefficients = std::move(coeffs);
  return out;
}

}  // namespace tbg
