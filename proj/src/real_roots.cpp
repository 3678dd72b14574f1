#include "weilforge/real_roots.hpp"

#include "modp.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "weilforge/errors.hpp"

namespace weilforge {

SturmSequence::SturmSequence(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("Sturm sequence of the zero polynomial");
  seq_.push_back(squarefree_part(p));
  if (seq_.front().is_constant()) return;
  seq_.push_back(primitive_part(derivative(seq_.front())));
  while (!seq_.back().is_constant()) {
    const IntPoly& a = seq_[seq_.size() - 2];
    const IntPoly& b = seq_.back();
    IntPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // prem scales by lc(b)^(deg a - deg b + 1); undo a negative scaling.
    const std::size_t delta = a.degree() - b.degree() + 1;
    const bool flip = b.leading() < 0 && (delta % 2 == 1);
    Integer c = content(r);
    if (!flip) c = -c;
    std::vector<Integer> next(r.coeffs().begin(), r.coeffs().end());
    for (auto& x : next) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    seq_.emplace_back(std::move(next));
  }
}

std::size_t SturmSequence::sign_variations(const Rat& x) const {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& s : seq_) {
    const int sg = sign_at(s, x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

std::size_t SturmSequence::count(const Rat& c, const Rat& d) const {
  if (!(c < d)) return 0;
  const std::size_t vc = sign_variations(c);
  const std::size_t vd = sign_variations(d);
  return vc >= vd ? vc - vd : 0;
}

std::size_t sturm_count(const IntPoly& p, const Rat& c, const Rat& d) { return SturmSequence(p).count(c, d); }

std::vector<Bracket> isolate_real_roots(const IntPoly& p, const Rat& lo, const Rat& hi) {
  const SturmSequence sturm(p);
  const IntPoly& s = sturm.squarefree();
  std::vector<Bracket> out;
  struct Pending {
    Rat lo;
    Rat hi;
    std::size_t roots;
  };
  std::vector<Pending> stack{{lo, hi, sturm.count(lo, hi)}};
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    if (cur.roots == 0) continue;
    if (cur.roots == 1) {
      // Move the ends off any root so the bracket has a strict sign change.
      Rat l = cur.lo;
      Rat h = cur.hi;
      while (true) {
        if (sign_at(s, h) == 0) {
          out.push_back({h, h});
          break;
        }
        if (sign_at(s, l) != 0) {
          out.push_back({l, h});
          break;
        }
        Rat mid = (l + h) / 2;
        if (sturm.count(l, mid) == 1) {
          h = mid;
        } else {
          l = mid;
        }
      }
      continue;
    }
    Rat mid = (cur.lo + cur.hi) / 2;
    const std::size_t left = sturm.count(cur.lo, mid);
    stack.push_back({mid, cur.hi, cur.roots - left});
    stack.push_back({cur.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const Bracket& x, const Bracket& y) { return x.lo < y.lo; });
  return out;
}

void refine_bracket(const IntPoly& p, Bracket& bracket, const Rat& width_bound) {
  if (bracket.exact()) return;
  const int sign_lo = sign_at(p, bracket.lo);
  if (sign_lo == 0) throw InternalError("bracket endpoint is a root");
  while (bracket.width() > width_bound) {
    Rat mid = (bracket.lo + bracket.hi) / 2;
    const int sg = sign_at(p, mid);
    if (sg == 0) {
      bracket.lo = mid;
      bracket.hi = mid;
      return;
    }
    if (sg == sign_lo) {
      bracket.lo = mid;
    } else {
      bracket.hi = mid;
    }
  }
}

IntervalAB::IntervalAB() : a_{Rat(171, 1000), Rat(172, 1000)}, b_{Rat(5828, 1000), Rat(5829, 1000)} {
  a_.lo.canonicalize();
  a_.hi.canonicalize();
  b_.lo.canonicalize();
  b_.hi.canonicalize();
}

IntPoly IntervalAB::minimal_polynomial() { return IntPoly{1, -6, 1}; }

void IntervalAB::refine() {
  const IntPoly q = minimal_polynomial();
  refine_bracket(q, a_, a_.width() / 2);
  refine_bracket(q, b_, b_.width() / 2);
}

RootReport verify_roots_in_ab(const IntPoly& p, bool require_distinct) {
  if (p.is_zero() || !p.is_monic()) throw PreconditionViolated("verify_roots_in_ab needs a monic polynomial");
  RootReport report;
  report.poly = p;
  const IntPoly q = IntervalAB::minimal_polynomial();
  IntPoly reduced = p;
  while (reduced.size() > q.degree()) {
    auto [quot, rem] = divmod_monic(reduced, q);
    if (!rem.is_zero()) break;
    reduced = std::move(quot);
    ++report.endpoint_multiplicity;
  }
  report.reduced = reduced;
  if (reduced.is_constant()) {
    report.all_in_interval = true;
    report.distinct = report.endpoint_multiplicity <= 1;
    return report;
  }

  const SturmSequence sturm(reduced);
  const std::size_t distinct_roots = sturm.squarefree().degree();
  IntervalAB ab;
  constexpr int kMaxRefinements = 4000;
  int steps = 0;
  while (sturm.count(ab.a().lo, ab.a().hi) != 0 || sturm.count(ab.b().lo, ab.b().hi) != 0) {
    if (++steps > kMaxRefinements) throw InternalError("endpoint refinement did not terminate");
    ab.refine();
  }
  // No root in the end brackets, so (a.lo, b.hi] counts exactly the roots in (a, b).
  report.all_in_interval = sturm.count(ab.a().lo, ab.b().hi) == distinct_roots;
  report.distinct = report.endpoint_multiplicity <= 1 && distinct_roots == reduced.degree();
  if (report.all_in_interval && (report.distinct || !require_distinct)) {
    report.isolating_brackets = isolate_real_roots(reduced, ab.a().lo, ab.b().hi);
  }
  return report;
}

RootReport refine_root_brackets(RootReport report, const Rat& width_bound) {
  if (!report.all_in_interval || !report.distinct) {
    throw PreconditionViolated("refine_root_brackets needs distinct roots in [a, b]");
  }
  for (auto& b : report.isolating_brackets) refine_bracket(report.reduced, b, width_bound);
  return report;
}

namespace {

// Root brackets as fixed-point integers with kFracBits fractional bits,
// rounded outward. Roots are below 6, so sums of up to 1000 of them fit.
constexpr unsigned kFracBits = 50;

struct FixedBox {
  std::int64_t lo;
  std::int64_t hi;
};

FixedBox to_box(const Bracket& b) {
  Integer lo;
  Integer hi;
  Integer num = b.lo.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), kFracBits);
  mpz_fdiv_q(lo.get_mpz_t(), num.get_mpz_t(), b.lo.get_den_mpz_t());
  num = b.hi.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), kFracBits);
  mpz_cdiv_q(hi.get_mpz_t(), num.get_mpz_t(), b.hi.get_den_mpz_t());
  return {lo.get_si(), hi.get_si()};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && a < 0) ? q - 1 : q;
}

class SubsetSearch {
 public:
  SubsetSearch(const IntPoly& p, std::vector<Bracket> brackets, std::size_t max_size, std::vector<bool> sizes)
      : p_(p), brackets_(std::move(brackets)), max_size_(max_size), sizes_(std::move(sizes)) {
    for (const auto& b : brackets_) boxes_.push_back(to_box(b));
  }

  std::vector<std::pair<std::vector<std::size_t>, IntPoly>> run() {
    walk(0, 0, 0);
    return std::move(found_);
  }

 private:
  // The trace of a factor is an integer, so the enclosure of the subset's
  // root sum has to contain one.
  void walk(std::size_t start, std::int64_t sum_lo, std::int64_t sum_hi) {
    constexpr std::int64_t kOne = std::int64_t{1} << kFracBits;
    for (std::size_t i = start; i < boxes_.size(); ++i) {
      current_.push_back(i);
      const std::int64_t lo = sum_lo + boxes_[i].lo;
      const std::int64_t hi = sum_hi + boxes_[i].hi;
      if (sizes_[current_.size()] && -floor_div(-lo, kOne) <= floor_div(hi, kOne)) check_current();
      if (current_.size() < max_size_) walk(i + 1, lo, hi);
      current_.pop_back();
    }
  }

  // Elementary symmetric functions of positive numbers are increasing in
  // each argument, so their values at the lower and upper bracket ends
  // enclose the coefficients of the candidate factor. The brackets of this
  // subset are narrowed until every enclosure holds at most one integer.
  void check_current() {
    const std::size_t s = current_.size();
    for (int round = 0; round < 64; ++round) {
      std::vector<Rat> e_lo(s + 1, Rat(0));
      std::vector<Rat> e_hi(s + 1, Rat(0));
      e_lo[0] = e_hi[0] = 1;
      for (std::size_t t = 0; t < s; ++t) {
        const Bracket& b = brackets_[current_[t]];
        for (std::size_t j = t + 1; j >= 1; --j) {
          e_lo[j] += b.lo * e_lo[j - 1];
          e_hi[j] += b.hi * e_hi[j - 1];
        }
      }
      std::vector<Integer> coeffs(s + 1);
      coeffs[s] = 1;
      bool ambiguous = false;
      for (std::size_t j = 1; j <= s; ++j) {
        Integer first;
        Integer last;
        mpz_cdiv_q(first.get_mpz_t(), e_lo[j].get_num_mpz_t(), e_lo[j].get_den_mpz_t());
        mpz_fdiv_q(last.get_mpz_t(), e_hi[j].get_num_mpz_t(), e_hi[j].get_den_mpz_t());
        if (first > last) return;
        if (first < last) {
          ambiguous = true;
          continue;
        }
        coeffs[s - j] = (j % 2 == 0) ? first : Integer(-first);
      }
      if (!ambiguous) {
        test_candidate(IntPoly(std::move(coeffs)));
        return;
      }
      for (std::size_t idx : current_) {
        Bracket& b = brackets_[idx];
        refine_bracket(p_, b, b.width() / Integer(1UL << 20));
        boxes_[idx] = to_box(b);
      }
    }
    throw InternalError("coefficient enclosures did not separate integers");
  }

  void test_candidate(const IntPoly& candidate) {
    auto [quot, rem] = divmod_monic(p_, candidate);
    if (rem.is_zero()) found_.emplace_back(current_, candidate);
  }

  const IntPoly& p_;
  std::vector<Bracket> brackets_;
  std::vector<FixedBox> boxes_;
  std::size_t max_size_;
  std::vector<bool> sizes_;  // subset sizes worth testing
  std::vector<std::size_t> current_;
  std::vector<std::pair<std::vector<std::size_t>, IntPoly>> found_;
};

double subset_count(std::size_t n, std::size_t max_size) {
  double total = 0;
  double term = 1;
  for (std::size_t s = 1; s <= max_size && s <= n; ++s) {
    term = term * static_cast<double>(n - s + 1) / static_cast<double>(s);
    total += term;
  }
  return total;
}

}  // namespace

FactorSplit small_factor_split(const IntPoly& p, std::size_t max_degree) {
  if (p.is_zero() || !p.is_monic()) throw PreconditionViolated("small_factor_split needs a monic polynomial");
  if (!is_squarefree(p)) throw PreconditionViolated("small_factor_split needs a squarefree polynomial");
  FactorSplit split;
  if (max_degree == 0 || p.is_constant()) {
    split.cofactor = p;
    return split;
  }
  RootReport report = verify_roots_in_ab(p, true);
  if (!report.all_in_interval || !report.distinct) {
    throw PreconditionViolated("small_factor_split needs all roots in [a, b]");
  }
  if (report.endpoint_multiplicity == 1 && max_degree >= 2) split.factors.push_back(IntervalAB::minimal_polynomial());

  const IntPoly reduced = report.reduced;
  if (!reduced.is_constant()) {
    const std::size_t n = reduced.degree();
    // Sizes that no factorization modulo small primes allows are skipped.
    const std::vector<bool> sizes = detail::possible_factor_degrees(reduced);
    std::size_t max_size = 0;
    for (std::size_t s = 1; s <= std::min(max_degree, n); ++s) {
      if (sizes[s]) max_size = s;
    }
    std::vector<std::pair<std::vector<std::size_t>, IntPoly>> divisors;
    if (max_size > 0) {
      if (subset_count(n, max_size) > 4.0e8) throw PreconditionViolated("root subset enumeration is too large");
      const Rat width(1, Integer(1) << 64);
      report = refine_root_brackets(std::move(report), width);
      SubsetSearch search(reduced, report.isolating_brackets, max_size, sizes);
      divisors = search.run();
    }
    std::stable_sort(divisors.begin(), divisors.end(),
                     [](const auto& x, const auto& y) { return x.first.size() < y.first.size(); });
    // Irreducible factors are the divisors with no smaller divisor inside.
    std::vector<const std::vector<std::size_t>*> minimal;
    for (const auto& [subset, poly] : divisors) {
      const bool has_smaller = std::any_of(minimal.begin(), minimal.end(), [&](const auto* m) {
        return std::includes(subset.begin(), subset.end(), m->begin(), m->end());
      });
      if (has_smaller) continue;
      minimal.push_back(&subset);
      split.factors.push_back(poly);
    }
  }
  std::sort(split.factors.begin(), split.factors.end(), canonical_less);
  IntPoly cofactor = p;
  for (const auto& f : split.factors) cofactor = exact_div(cofactor, f);
  split.cofactor = cofactor;
  return split;
}

}  // namespace weilforge
