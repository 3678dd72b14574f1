#include "weilforge/disc_quality.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json_util.hpp"
#include "weilforge/errors.hpp"
#include "weilforge/family.hpp"
#include "weilforge/real_roots.hpp"

namespace weilforge {

namespace {

using detail::Json;

const IntPoly& t_squared_minus_8() {
  static const IntPoly p{-8, 0, 1};
  return p;
}

// Horner evaluation in interval arithmetic.
std::pair<Rat, Rat> enclose(const IntPoly& p, const Rat& l, const Rat& h) {
  const std::size_t d = p.degree();
  Rat lo = p.coeff(d);
  Rat hi = lo;
  for (std::size_t i = d; i-- > 0;) {
    Rat a = lo * l;
    Rat b = lo * h;
    Rat c = hi * l;
    Rat e = hi * h;
    lo = std::min({a, b, c, e}) + p.coeff(i);
    hi = std::max({a, b, c, e}) + p.coeff(i);
  }
  return {lo, hi};
}

Integer floor_of(const Rat& x) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

long isqrt_floor_49(const Rat& x) {
  if (x <= 0) return 0;
  Integer f = floor_of(49 * x);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r.get_si();
}

bool mod2_shape_holds(const IntPoly& q) {
  const std::size_t d = q.degree();
  Integer binom = 1;
  for (std::size_t i = 0; i <= d; ++i) {
    if (mpz_odd_p(q.coeff(i).get_mpz_t()) != mpz_odd_p(binom.get_mpz_t())) return false;
    binom = binom * static_cast<unsigned long>(d - i) / static_cast<unsigned long>(i + 1);
  }
  return true;
}

struct Candidate {
  Bracket bracket;
  Rat lo;
  Rat hi;
  bool exact_value = false;
};

}  // namespace

std::string_view to_string(RepSource s) {
  switch (s) {
    case RepSource::exhaust:
      return "exhaust";
    case RepSource::compose:
      return "compose";
    case RepSource::extend:
      return "extend";
    case RepSource::naf:
      return "naf";
  }
  return "unknown";
}

RepSource rep_source_from_string(std::string_view s) {
  if (s == "exhaust") return RepSource::exhaust;
  if (s == "compose") return RepSource::compose;
  if (s == "extend") return RepSource::extend;
  if (s == "naf") return RepSource::naf;
  throw std::invalid_argument("unknown representation source: " + std::string(s));
}

bool better_rep(const CompliantRep& lhs, const CompliantRep& rhs) {
  if (lhs.quality7 != rhs.quality7) return lhs.quality7 > rhs.quality7;
  return canonical_less(lhs.q, rhs.q);
}

IntPoly circle_norm(const IntPoly& q) {
  const QuadReduction r = quad_reduce(q);
  return r.a * r.a * Integer(2) + IntPoly::x() * r.a * r.b + r.b * r.b;
}

bool disc_condition(const IntPoly& q) {
  if (q.is_zero()) return false;
  const std::size_t d = q.degree();
  if (d == 0) return true;
  // H(v) = G(2v) where G(z^2) = +-Q(z)Q(-z); roots of H are z^2/2.
  const IntPoly prod = q * substitute_linear(q, -1, 0);
  std::vector<Integer> h(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    h[i] = prod.coeff(2 * i);
    if (d % 2 == 1) h[i] = -h[i];
    mpz_mul_2exp(h[i].get_mpz_t(), h[i].get_mpz_t(), i);
  }
  // Schur-Cohn form: all roots of H in |v| < 1 iff it is positive definite.
  std::vector<std::vector<Integer>> m(d, std::vector<Integer>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k <= i; ++k) {
        s += h[d - i + k] * h[d - j + k] - h[i - k] * h[j - k];
      }
      m[i][j] = s;
      m[j][i] = s;
    }
  }
  // Bareiss elimination; the k-th pivot is the k-th leading principal minor.
  Integer prev = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (sgn(m[k][k]) <= 0) return false;
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) {
        Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(v);
      }
    }
    prev = m[k][k];
  }
  return true;
}

bool is_compliant(const IntPoly& q, const Integer& m) {
  if (!q.is_monic()) return false;
  if (evaluate(q, Integer(2)) != m) return false;
  if (!mod2_shape_holds(q)) return false;
  return disc_condition(q);
}

long quality7(const IntPoly& q) {
  if (!q.is_monic() || !disc_condition(q)) throw NotCompliant("quality7 needs all roots in |z| < sqrt 2");
  return quality7_unchecked(q);
}

long quality7_unchecked(const IntPoly& q) {
  const IntPoly r = circle_norm(q);
  if (r.is_zero()) return 0;
  if (r.is_constant()) return isqrt_floor_49(Rat(r.coeff(0)));

  // The minimum of R on [-2 sqrt 2, 2 sqrt 2] is attained at a root of
  // R'(t) (t^2 - 8) inside that interval.
  const IntPoly crit = squarefree_part(derivative(r) * t_squared_minus_8());
  std::vector<Candidate> cands;
  for (Bracket b : isolate_real_roots(crit, Rat(-3), Rat(3))) {
    bool inside = false;
    if (b.exact()) {
      inside = b.lo * b.lo < 8;
    } else {
      if (b.width() >= 1) refine_bracket(crit, b, Rat(1, 2));
      const int s_lo = sign_at(t_squared_minus_8(), b.lo);
      const int s_hi = sign_at(t_squared_minus_8(), b.hi);
      // A sign change means the isolated root is +-2 sqrt 2 itself.
      inside = (s_lo != s_hi) || s_lo < 0;
    }
    if (!inside) continue;
    Candidate c{b, {}, {}, b.exact()};
    if (c.exact_value) {
      c.lo = c.hi = evaluate(r, b.lo);
    } else {
      std::tie(c.lo, c.hi) = enclose(r, b.lo, b.hi);
    }
    cands.push_back(std::move(c));
  }
  if (cands.empty()) throw InternalError("no critical point of R in [-2 sqrt 2, 2 sqrt 2]");

  long checked_level = -1;
  IntPoly level_gcd;
  for (int round = 0; round < 2000; ++round) {
    Rat lmin = cands.front().lo;
    Rat umin = cands.front().hi;
    for (const Candidate& c : cands) {
      lmin = std::min(lmin, c.lo);
      umin = std::min(umin, c.hi);
    }
    const long qlo = isqrt_floor_49(lmin);
    const long qhi = isqrt_floor_49(umin);
    if (qlo >= qhi) return qhi;
    // Decide whether min R >= qhi^2 / 49. Candidates sitting exactly on that
    // level are detected through gcd(49 R - qhi^2, crit).
    const Rat level(Integer(qhi) * qhi, 49);
    if (checked_level != qhi) {
      checked_level = qhi;
      level_gcd = poly_gcd_rational(r * Integer(49) - IntPoly::constant(Integer(qhi) * qhi), crit);
    }
    for (Candidate& c : cands) {
      if (c.lo >= level || c.exact_value) continue;
      if (!level_gcd.is_constant() && sturm_count(level_gcd, c.bracket.lo, c.bracket.hi) > 0) {
        c.lo = c.hi = level;
        c.exact_value = true;
        continue;
      }
      refine_bracket(crit, c.bracket, c.bracket.width() / 2);
      if (c.bracket.exact()) {
        c.lo = c.hi = evaluate(r, c.bracket.lo);
        c.exact_value = true;
      } else {
        std::tie(c.lo, c.hi) = enclose(r, c.bracket.lo, c.bracket.hi);
      }
    }
  }
  // Refinement cap reached: fall back to the certified lower value.
  Rat lmin = cands.front().lo;
  for (const Candidate& c : cands) lmin = std::min(lmin, c.lo);
  return isqrt_floor_49(lmin);
}

bool quality_samples_hold(const IntPoly& q, long q7, std::size_t samples) {
  const IntPoly r = circle_norm(q);
  if (r.is_zero()) return q7 <= 0;
  if (samples < 2) samples = 2;
  // t = -L + 2 L j / (samples - 1) with L = 2827/1000 < 2 sqrt 2 - 1/1000,
  // i.e. t = a / den with den = 1000 (samples - 1).
  const long steps = static_cast<long>(samples - 1);
  const Integer den = Integer(1000) * steps;
  const std::size_t d = r.degree();
  std::vector<Integer> den_pow(d + 1);
  den_pow[0] = 1;
  for (std::size_t i = 1; i <= d; ++i) den_pow[i] = den_pow[i - 1] * den;
  const Integer target = Integer(q7) * q7 * den_pow[d];
  for (long j = 0; j <= steps; ++j) {
    const Integer a = Integer(-2827) * steps + Integer(2 * 2827) * j;
    Integer acc = r.coeff(d);
    for (std::size_t i = d; i-- > 0;) acc = acc * a + r.coeff(i) * den_pow[d - i];
    if (49 * acc < target) return false;
  }
  return true;
}

const CompliantRep* RepTable::find(unsigned long m) const {
  auto it = entries_.find(m);
  return it == entries_.end() ? nullptr : &it->second;
}

bool RepTable::offer(const CompliantRep& rep) {
  const unsigned long key = rep.m.get_ui();
  auto it = entries_.find(key);
  if (it != entries_.end() && !better_rep(rep, it->second)) return false;
  entries_.insert_or_assign(key, rep);
  return true;
}

void RepTable::put(const CompliantRep& rep) { entries_.insert_or_assign(rep.m.get_ui(), rep); }

void RepTable::erase_above(unsigned long max_m) {
  entries_.erase(entries_.upper_bound(max_m), entries_.end());
}

std::string RepTable::to_jsonl() const {
  std::string out;
  for (const auto& [m, rep] : entries_) {
    Json j;
    j["m"] = detail::integer_to_json(rep.m);
    j["coeffs"] = detail::poly_to_json(rep.q);
    j["quality7"] = rep.quality7;
    j["src"] = std::string(to_string(rep.src));
    out += j.dump();
    out += '\n';
  }
  return out;
}

RepTable RepTable::from_jsonl(std::string_view text) {
  RepTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      CompliantRep rep;
      rep.m = detail::integer_from_json(j.at("m"));
      rep.q = detail::poly_from_json(j.at("coeffs"));
      rep.quality7 = static_cast<long>(detail::small_from_json(j.at("quality7")));
      rep.src = rep_source_from_string(j.at("src").get<std::string>());
      if (rep.m < 1 || !rep.m.fits_ulong_p()) throw Error("m out of range");
      if (table.find(rep.m.get_ui()) != nullptr) throw Error("duplicate m");
      table.put(rep);
    } catch (const std::exception& e) {
      throw Error("table line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

void RepTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_jsonl();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

RepTable RepTable::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw TableMissing("no table at " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_jsonl(buf.str());
}

std::vector<std::string> check_rep(const CompliantRep& rep) {
  std::vector<std::string> reasons;
  if (rep.m < 1 || mpz_even_p(rep.m.get_mpz_t())) reasons.push_back("m is not a positive odd integer");
  if (!rep.q.is_monic()) {
    reasons.push_back("Q is not monic");
    return reasons;
  }
  if (evaluate(rep.q, Integer(2)) != rep.m) reasons.push_back("Q(2) != m");
  if (!mod2_shape_holds(rep.q)) reasons.push_back("Q is not (z-1)^deg mod 2");
  if (!disc_condition(rep.q)) {
    reasons.push_back("Q has a root outside |z| < sqrt 2");
    return reasons;
  }
  if (rep.quality7 < 0) reasons.push_back("negative quality7");
  const long exact = quality7_unchecked(rep.q);
  if (exact < rep.quality7) {
    reasons.push_back("quality7 " + std::to_string(rep.quality7) + " exceeds the exact value " + std::to_string(exact));
  }
  return reasons;
}

RepTable exhaust_low_degree() {
  RepTable table;
  for (std::size_t n = 1; n <= 7; ++n) {
    std::vector<std::vector<long>> choices(n);
    Integer binom = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mpz_odd_p(binom.get_mpz_t())) {
        choices[i] = {-3, -1, 1, 3};
      } else {
        choices[i] = {-2, 0, 2};
      }
      binom = binom * static_cast<unsigned long>(n - i) / static_cast<unsigned long>(i + 1);
    }
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<Integer> coeffs(n + 1);
      for (std::size_t i = 0; i < n; ++i) coeffs[i] = choices[i][idx[i]];
      coeffs[n] = 1;
      IntPoly q(std::move(coeffs));
      if (disc_condition(q)) {
        CompliantRep rep{evaluate(q, Integer(2)), q, 0, RepSource::exhaust};
        rep.quality7 = quality7_unchecked(q);
        table.offer(rep);
      }
      std::size_t pos = 0;
      while (pos < n && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
      if (pos == n) break;
    }
  }
  return table;
}

CompliantRep compose_reps(const CompliantRep& r1, const CompliantRep& r2, const Integer& c) {
  const Integer abs_c = abs(c);
  const Integer prod = Integer(r1.quality7) * r2.quality7;
  if (prod <= 49 * abs_c) throw QualityUnderflow("quality product does not exceed |c|");
  CompliantRep out;
  out.m = r1.m * r2.m + c;
  out.q = r1.q * r2.q + IntPoly::constant(c);
  out.src = RepSource::compose;
  Integer cheap = prod / 7 - 7 * abs_c;
  out.quality7 = cheap.get_si();
  if (out.quality7 < 56) out.quality7 = std::max(out.quality7, quality7_unchecked(out.q));
  return out;
}

CompliantRep extend_rep(const CompliantRep& r, const Integer& c) {
  if (r.quality7 < 49) throw QualityTooLow("extension needs quality7 >= 49");
  if (mpz_odd_p(c.get_mpz_t()) || abs(c) > 14) throw PreconditionViolated("extension needs c even with |c| <= 14");
  CompliantRep out;
  out.m = 15 * r.m + c;
  out.q = IntPoly{-1, 0, 0, 0, 1} * r.q + IntPoly::constant(c);
  out.quality7 = 3 * r.quality7 - 7 * Integer(abs(c)).get_si();
  out.src = RepSource::extend;
  return out;
}

namespace {

unsigned long ceil_sqrt(unsigned long m) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), Integer(m).get_mpz_t());
  unsigned long s = r.get_ui();
  return s * s < m ? s + 1 : s;
}

// Exact quality of a candidate Q1 Q2 + c, or nullopt when it is not compliant.
std::optional<CompliantRep> evaluate_exactly(const CompliantRep& r1, const CompliantRep& r2, long c,
                                             TableStats* stats) {
  CompliantRep cand;
  cand.m = r1.m * r2.m + c;
  cand.q = r1.q * r2.q + IntPoly::constant(Integer(c));
  cand.src = RepSource::compose;
  const long abs_c = c < 0 ? -c : c;
  // When q1 q2 > 49 |c| compliance follows from Rouche; otherwise test it.
  if (r1.quality7 * r2.quality7 <= 49 * abs_c && !disc_condition(cand.q)) return std::nullopt;
  if (stats) ++stats->exact_evaluations;
  cand.quality7 = quality7_unchecked(cand.q);
  return cand;
}

void process_m(RepTable& table, unsigned long m, TableStats* stats) {
  const unsigned long m1_end = ceil_sqrt(m);
  std::set<std::pair<unsigned long, unsigned long>> exact_done;
  const CompliantRep* best = table.find(m);
  std::optional<CompliantRep> current;
  if (best) current = *best;

  auto candidates = [&](auto&& visit) {
    for (unsigned long m1 = 3; m1 < m1_end; m1 += 2) {
      const CompliantRep* r1 = table.find(m1);
      if (!r1) continue;
      const unsigned long fl = (m + m1) / (2 * m1);
      const bool divisible = (m + m1) % (2 * m1) == 0;
      const unsigned long options[2] = {2 * fl - 1, divisible ? 2 * fl - 1 : 2 * fl + 1};
      for (int o = 0; o < (divisible ? 1 : 2); ++o) {
        const unsigned long m2 = options[o];
        if (m2 >= m || m2 == 0) continue;
        const CompliantRep* r2 = table.find(m2);
        if (!r2) continue;
        if (!visit(m1, *r1, m2, *r2)) return;
      }
    }
  };

  candidates([&](unsigned long m1, const CompliantRep& r1, unsigned long m2, const CompliantRep& r2) {
    const long c = static_cast<long>(m) - static_cast<long>(m1 * m2);
    const long abs_c = c < 0 ? -c : c;
    const long cheap = (r1.quality7 * r2.quality7) / 7 - 7 * abs_c;
    if (!current || cheap > current->quality7) {
      if (cheap >= 56) {
        CompliantRep cand;
        cand.m = m;
        cand.q = r1.q * r2.q + IntPoly::constant(Integer(c));
        cand.quality7 = cheap;
        cand.src = RepSource::compose;
        if (!current || better_rep(cand, *current)) current = std::move(cand);
      } else {
        exact_done.emplace(m1, m2);
        auto cand = evaluate_exactly(r1, r2, c, stats);
        if (cand && (!current || better_rep(*cand, *current))) current = std::move(*cand);
      }
    }
    return !(current && current->quality7 >= 56);
  });

  const bool short_fall = !current || (m >= 3095 && current->quality7 < 49);
  if (short_fall) {
    if (stats) stats->fallback_m.push_back(m);
    candidates([&](unsigned long m1, const CompliantRep& r1, unsigned long m2, const CompliantRep& r2) {
      if (exact_done.count({m1, m2})) return true;
      const long c = static_cast<long>(m) - static_cast<long>(m1 * m2);
      auto cand = evaluate_exactly(r1, r2, c, stats);
      if (cand && (!current || better_rep(*cand, *current))) current = std::move(*cand);
      return true;
    });
  }
  if (current) table.put(*current);
}

}  // namespace

void extend_table(RepTable& table, unsigned long max_m, TableStats* stats) {
  const unsigned long done = table.empty() ? 0 : table.entries().rbegin()->first;
  if (max_m <= done) return;
  const RepTable seeds = exhaust_low_degree();
  for (const auto& [m, rep] : seeds.entries()) {
    if (m > done && m <= max_m) {
      table.offer(rep);
      if (stats) ++stats->exhaust_entries;
    }
  }
  for (unsigned long m = (done % 2 == 0 ? done + 1 : done + 2); m <= max_m; m += 2) process_m(table, m, stats);
}

RepTable build_table(unsigned long max_m, TableStats* stats) {
  RepTable table;
  extend_table(table, max_m, stats);
  return table;
}

namespace {

CompliantRep rep_of_quality_49(const Integer& m, const RepTable& table);

CompliantRep table_or_recursion(const Integer& m, const RepTable& table) {
  if (m <= kTableLimit) {
    const CompliantRep* rep = table.find(m.get_ui());
    if (!rep) throw TableMissing("no table entry for m = " + m.get_str());
    return *rep;
  }
  // m = 15 m' + c with m' the odd integer nearest to m / 15.
  Integer half = (m + 15) / 30;
  Integer m_prime = 2 * half - 1;
  Integer c = m - 15 * m_prime;
  if (abs(c) > 14) throw InternalError("15m'+c recursion produced |c| > 14");
  return extend_rep(rep_of_quality_49(m_prime, table), c);
}

CompliantRep rep_of_quality_49(const Integer& m, const RepTable& table) {
  const IntPoly digits = naf(m).digit_poly();
  if (is_compliant(digits, m)) {
    const long q = quality7_unchecked(digits);
    if (q >= 49) return CompliantRep{m, digits, q, RepSource::naf};
  }
  return table_or_recursion(m, table);
}

}  // namespace

CompliantRep compliant_rep(const Integer& m, const RepTable& table) {
  if (m < 1 || mpz_even_p(m.get_mpz_t())) throw PreconditionViolated("compliant_rep needs an odd m >= 1");
  const IntPoly digits = naf(m).digit_poly();
  if (is_compliant(digits, m)) return CompliantRep{m, digits, quality7_unchecked(digits), RepSource::naf};
  return table_or_recursion(m, table);
}

}  // namespace weilforge
