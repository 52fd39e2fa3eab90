#include "tbg/successor.hpp"

#include <array>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tbg/io.hpp"
#include "tbg/reduction.hpp"

namespace tbg {

namespace {

constexpr std::array<ClassTag, kClassCount> kClassOrder = {
    ClassTag::SPlus, ClassTag::SZero, ClassTag::SMinus, ClassTag::U0,
    ClassTag::Um1,   ClassTag::Um2,   ClassTag::Ut3,    ClassTag::Ut4,
    ClassTag::Ut5,   ClassTag::E1,    ClassTag::E2,     ClassTag::E3};

bool in_E(ClassTag c) { return c == ClassTag::E1 || c == ClassTag::E2 || c == ClassTag::E3; }
bool in_SE(ClassTag c) { return c == ClassTag::SMinus || in_E(c); }

ClassTag constant_base(long long c, int level, int k) {
  if (level <= 0) {
    if (c == 0) return ClassTag::SZero;
    if (c >= 1 && c <= k) return ClassTag::SPlus;
    if (c == k + 1) return ClassTag::Ut3;
    if (c == k + 2) return ClassTag::Ut5;
  } else {
    if (c == 0) return ClassTag::SZero;
    if (c >= 1 && c <= k - 1) return ClassTag::SPlus;
    if (c == k) return ClassTag::U0;
    if (c == k + 1) return ClassTag::Um2;
  }
  throw std::logic_error("classify: constant " + std::to_string(c) +
                         " has no base row at level " + std::to_string(level));
}

ClassTag induct_row(ClassTag cr, long long c, int k) {
  std::vector<ClassTag> matches;
  auto add = [&](bool cond, ClassTag out) {
    if (cond) matches.push_back(out);
  };

  if (c > 0) {
    add(c <= k - 2, ClassTag::SPlus);
    add(c == k - 1 && (cr == ClassTag::SZero || cr == ClassTag::SPlus || cr == ClassTag::U0 ||
                       cr == ClassTag::Ut3),
        ClassTag::SPlus);
    add(c == k - 1 && cr == ClassTag::Um1, ClassTag::U0);
    add(c == k - 1 && in_SE(cr), ClassTag::U0);
    add(c == k - 1 && cr == ClassTag::Ut4, ClassTag::Ut3);
    add(c == k - 1 && cr == ClassTag::Um2, ClassTag::Um1);
    add(c == k - 1 && cr == ClassTag::Ut5, ClassTag::Ut4);
    add(c == k && (cr == ClassTag::SZero || cr == ClassTag::SPlus), ClassTag::U0);
    add(c == k && cr == ClassTag::Um1, ClassTag::Um2);
    add(c == k && cr == ClassTag::Ut4, ClassTag::Ut5);
    add(c == k && cr == ClassTag::U0, ClassTag::Um1);
    add(c == k && cr == ClassTag::Ut3, ClassTag::Ut4);
    add(c == k && in_SE(cr), ClassTag::Um2);
    add(c == k + 1 && (cr == ClassTag::SPlus || cr == ClassTag::SZero), ClassTag::Um2);
    // Reduced words reach configurations beyond the tabulated rows through an
    // E detour (at k=2 the E3 constant -k+2 is zero, and any k allows an E run
    // back to U0 via the c = k-1 row). The classes below are forced by the
    // successor behavior of witness words: k+1 after U0/E3 rewrites with a -a
    // step, k after U-2 steps +b-a, and k+1 after U-1 steps -a again.
    add(c == k + 1 && cr == ClassTag::U0, ClassTag::Um2);
    add(c == k + 1 && cr == ClassTag::E3, ClassTag::Um2);
    add(c == k && cr == ClassTag::Um2, ClassTag::Um1);
    add(c == k + 1 && cr == ClassTag::Um1, ClassTag::Um2);
  } else if (c == 0) {
    add(true, ClassTag::SZero);
  } else {
    add(c == -k + 1 && cr == ClassTag::E1, ClassTag::E2);
    add(c == -k + 1 && cr == ClassTag::E2, ClassTag::E3);
    add(c == -k + 1 && cr == ClassTag::E3, ClassTag::SMinus);
    add(c == -k && cr == ClassTag::E2, ClassTag::E1);
    add(c == -k && cr == ClassTag::E3, ClassTag::E2);
    if (matches.empty()) add(true, ClassTag::SMinus);
  }

  if (matches.size() != 1)
    throw std::logic_error("classify: " + std::to_string(matches.size()) +
                           " induction rows match class " +
                           std::string(class_tag_name(cr)) + " with c = " + std::to_string(c));
  return matches.front();
}

ClassTag class_scan(const CoeffWord& word, int n, int k) {
  const int d = word.lead_degree;
  ClassTag cls = constant_base(word.at_degree(d), n - d, k);
  for (int j = d - 1; j >= 0; --j) {
    cls = induct_row(cls, word.at_degree(j), k);
    const int prefix_degree = d - j;
    const int prefix_level = n - j;
    if (prefix_degree == 1 && prefix_level <= 0 && word.at_degree(d) == 1) {
      if (word.at_degree(j) == -k + 1) cls = ClassTag::E1;
      if (word.at_degree(j) == -k + 2) cls = ClassTag::E3;
    }
  }
  return cls;
}

LaurentPoly plus_const(const LaurentPoly& P, long long v) {
  LaurentPoly out = P;
  out.add_coeff(0, v);
  return out;
}

CoeffWord trimmed_word(const LaurentPoly& P) {
  int hi = 0;
  if (auto h = P.highest_degree(); h && *h > 0) hi = *h;
  return word_window(P, hi, 0);
}

// A word with a non-negative constant can never scan to S-, E1, or E2; those
// classes only arise from a final negative coefficient. The converse holds
// for E3 only when k >= 3: at k=2 the E3 constant -k+2 is zero, so E3 words
// (and U words scanned through an E3 prefix) can sit on the interior path.
void check_type_class(TypeTag type, ClassTag cls) {
  const bool neg_only =
      cls == ClassTag::SMinus || cls == ClassTag::E1 || cls == ClassTag::E2;
  bool ok = true;
  switch (type) {
    case TypeTag::Negative: ok = in_SE(cls); break;
    case TypeTag::BoundaryP: ok = cls != ClassTag::SZero && !neg_only; break;
    case TypeTag::BoundaryS: ok = cls == ClassTag::SZero; break;
    case TypeTag::Initial: ok = cls == ClassTag::SZero; break;
    case TypeTag::Interior: ok = !neg_only; break;
  }
  if (!ok)
    throw std::logic_error(std::string("classify: type ") + type_tag_name(type) +
                           " contradicts class " + class_tag_name(cls));
}

}  // namespace

int class_index(ClassTag tag) {
  for (int i = 0; i < kClassCount; ++i)
    if (kClassOrder[static_cast<std::size_t>(i)] == tag) return i;
  throw std::logic_error("class_index: unknown tag");
}

ClassTag class_from_index(int index) {
  if (index < 0 || index >= kClassCount) throw std::out_of_range("class_from_index");
  return kClassOrder[static_cast<std::size_t>(index)];
}

const char* class_tag_name(ClassTag tag) {
  switch (tag) {
    case ClassTag::SPlus: return "S+";
    case ClassTag::SZero: return "S0";
    case ClassTag::SMinus: return "S-";
    case ClassTag::U0: return "U0";
    case ClassTag::Um1: return "U-1";
    case ClassTag::Um2: return "U-2";
    case ClassTag::Ut3: return "Ut-3";
    case ClassTag::Ut4: return "Ut-4";
    case ClassTag::Ut5: return "Ut-5";
    case ClassTag::E1: return "E1";
    case ClassTag::E2: return "E2";
    case ClassTag::E3: return "E3";
  }
  return "?";
}

const char* type_tag_name(TypeTag tag) {
  switch (tag) {
    case TypeTag::Initial: return "initial";
    case TypeTag::Interior: return "interior";
    case TypeTag::Negative: return "negative";
    case TypeTag::BoundaryP: return "boundaryP";
    case TypeTag::BoundaryS: return "boundaryS";
  }
  return "?";
}

const char* group_step_name(GroupStep step) {
  switch (step) {
    case GroupStep::PlusB: return "+b";
    case GroupStep::MinusA: return "-a";
    case GroupStep::PlusBMinusA: return "+b-a";
  }
  return "?";
}

Classification classify(const LaurentPoly& P, int n, int k) {
  if (auto lo = P.lowest_degree(); lo && *lo < 0)
    throw std::invalid_argument("classify: input has negative-degree terms");
  if (!P.is_zero() && P.coeff(*P.highest_degree()) < 0)
    throw std::invalid_argument("classify: leading coefficient is negative");
  if (!is_reduced_poly(P, n, k)) throw std::invalid_argument("classify: input is not reduced");

  if (P.is_zero()) {
    return {n <= 0 ? TypeTag::Initial : TypeTag::Interior, {ClassTag::SZero, false}};
  }

  const ClassTag cls = class_scan(trimmed_word(P), n, k);

  TypeTag type;
  if (P.coeff(0) < 0)
    type = TypeTag::Negative;
  else if (is_reduced_poly(plus_const(P, 1), n, k))
    type = TypeTag::Interior;
  else
    type = cls == ClassTag::SZero ? TypeTag::BoundaryS : TypeTag::BoundaryP;

  check_type_class(type, cls);
  return {type, {cls, false}};
}

Classification classify_general(const LaurentPoly& P, int n, int k) {
  if (P.is_zero()) return classify(P, n, k);
  if (P.coeff(*P.highest_degree()) > 0) return classify(P, n, k);
  Classification mirror = classify(P.negated(), n, k);
  mirror.cls.negated = true;
  return mirror;
}

LaurentPoly generalized_successor(const LaurentPoly& P, int n, int k) {
  if (auto lo = P.lowest_degree(); lo && *lo < 0)
    throw std::invalid_argument("successor: input has negative-degree terms");
  if (!is_reduced_poly(P, n, k)) throw std::invalid_argument("successor: input is not reduced");

  LaurentPoly p1 = plus_const(P, 1);
  if (is_reduced_poly(p1, n, k)) return p1;

  LaurentPoly q = reduce_polynomial_part(p1, n, k, 0);
  const long long r = q.coeff(-1);
  if (r == 0) {
    if (!is_reduced_poly(q, n, k))
      throw std::logic_error("successor: rewriting left a non-reduced polynomial");
    return q;
  }
  if (r != 1 && r != -1)
    throw std::logic_error("successor: residual X^-1 coefficient is " + std::to_string(r));

  LaurentPoly without = q;
  without.add_coeff(-1, -r);

  LaurentPoly both = without;
  both.add_coeff(0, -r);
  if (is_reduced_poly(both, n, k)) return both;
  if (is_reduced_poly(without, n, k)) return without;
  throw std::logic_error("successor: neither residual subtraction is reduced");
}

LaurentPoly successor(const LaurentPoly& P, int n, int k) {
  if (!P.is_zero() && P.coeff(*P.highest_degree()) < 0)
    throw std::invalid_argument("successor: leading coefficient is negative");
  return generalized_successor(P, n, k);
}

LaurentPoly predecessor(const LaurentPoly& P, int n, int k) {
  if (P.is_zero()) throw std::invalid_argument("predecessor: 0 has no predecessor");
  if (P.coeff(*P.highest_degree()) < 0)
    throw std::invalid_argument("predecessor: leading coefficient is negative");
  return generalized_successor(P.negated(), n, k).negated();
}

void enumerate_reduced(int n, int k, long long max_length,
                       const std::function<void(std::size_t, const EnumeratedWord&)>& emit) {
  if (max_length < 0) throw std::invalid_argument("enumerate_reduced: negative length budget");

  const long long stall_limit = 1024 + 64 * (max_length + k);
  long long above = 0;
  LaurentPoly p;
  for (std::size_t index = 0;; ++index) {
    const long long len = n_length(p, n).length;
    if (len <= max_length) {
      above = 0;
      EnumeratedWord word;
      word.poly = p;
      word.cls = classify(p, n, k);
      word.length = len;
      emit(index, word);
    } else if (++above > stall_limit) {
      break;
    }
    p = successor(p, n, k);
  }
}

std::vector<EnumeratedWord> enumerate_reduced_vector(int n, int k, long long max_length) {
  std::vector<EnumeratedWord> out;
  enumerate_reduced(n, k, max_length,
                    [&](std::size_t, const EnumeratedWord& w) { out.push_back(w); });
  return out;
}

SuccEffect succ_effect(const LaurentPoly& P, int n, int k) {
  const Classification c = classify(P, n, k);
  const GroupParams params(k);
  const LaurentPoly s = successor(P, n, k);
  const long long delta_ll = n_length(s, n).length - n_length(P, n).length;
  const int delta = static_cast<int>(delta_ll);
  const Vec2 before = evaluate_rep(params, P);
  const Vec2 after = evaluate_rep(params, s);
  const Vec2 dx{after.x0 - before.x0, after.x1 - before.x1};

  auto fail = [&](const char* why) {
    std::ostringstream os;
    os << "succ_effect: " << why << ": " << format_poly(P) << " n=" << n
       << " k=" << k << " class " << class_tag_name(c.cls.tag) << " type "
       << type_tag_name(c.type) << " dL=" << delta << " dx=(" << dx.x0 << ","
       << dx.x1 << ")";
    throw std::logic_error(os.str());
  };

  GroupStep step;
  if (dx == Vec2{0, 1})
    step = GroupStep::PlusB;
  else if (dx == Vec2{-1, 0})
    step = GroupStep::MinusA;
  else if (dx == Vec2{-1, 1})
    step = GroupStep::PlusBMinusA;
  else
    return fail("successor step is not +b, -a, or +b-a"), SuccEffect{};

  // The type pins the step and delta except on the boundary-P side. There the
  // step is -a when the reduction's X^-1 spill is absorbed together with the
  // increment and +b-a when only the spill is absorbed; which way it goes is
  // not determined by the class alone. Words whose scan passes a base-rooted
  // U prefix or an E detour take the -a branch from class U-1 (delta 0 or +1)
  // or the +b-a branch from class U-2, and the -a branch can also shrink a
  // negative constant by one. Every such case is cross-checked against the
  // breadth-first oracle in the tests, so only the envelope is asserted here.
  switch (c.type) {
    case TypeTag::Initial:
    case TypeTag::Interior:
      if (delta != +1 || step != GroupStep::PlusB) fail("interior word must step +b and grow");
      break;
    case TypeTag::Negative:
      if (delta != -1 || step != GroupStep::PlusB) fail("negative word must step +b and shrink");
      break;
    case TypeTag::BoundaryS:
      if (delta != 0 || step != GroupStep::PlusB) fail("boundary-S word must step +b at length");
      break;
    case TypeTag::BoundaryP:
      if (step == GroupStep::PlusB) fail("boundary-P word cannot step +b");
      if (step == GroupStep::PlusBMinusA && delta != 0)
        fail("the +b-a branch must preserve length");
      if (delta < -1 || delta > +1) fail("length delta out of range");
      break;
  }
  return SuccEffect{delta, step};
}

}  // namespace tbg
