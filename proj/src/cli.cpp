#include "weilforge/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "json_util.hpp"
#include "weilforge/disc_quality.hpp"
#include "weilforge/errors.hpp"
#include "weilforge/family.hpp"
#include "weilforge/padic.hpp"
#include "weilforge/pipeline.hpp"

namespace weilforge {

namespace {

namespace fs = std::filesystem;
using detail::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string table_path;
  std::size_t n_budget = 64;
  std::size_t jobs = 1;
  std::string format = "text";
};

std::string default_table_path() {
  if (const char* env = std::getenv("WEILFORGE_TABLE"); env != nullptr && *env != '\0') return env;
  return "compliant_table.jsonl";
}

Integer parse_positive(const std::string& text, const std::string& what) {
  Integer x;
  if (text.empty() || text[0] == '+' || x.set_str(text, 10) != 0) throw UsageError(what + " must be a decimal integer");
  if (x < 1) throw UsageError(what + " must be positive");
  return x;
}

// The table is consulted for odd m whose NAF digits are not compliant, either
// directly (m <= kTableLimit) or at the bottom of the 15 m' + c recursion.
unsigned long table_bound_for(Integer m) {
  while (m > kTableLimit) m = 2 * ((m + 15) / 30) - 1;
  return m.get_ui();
}

bool naf_is_compliant(const Integer& m) { return is_compliant(naf(m).digit_poly(), m); }

RepTable table_for(const Integer& m, const std::string& path, std::ostream& err) {
  RepTable table;
  if (fs::exists(path)) table = RepTable::load(path);
  const unsigned long bound = table_bound_for(m);
  const unsigned long have = table.empty() ? 0 : table.entries().rbegin()->first;
  if (have < bound) {
    err << "note: building the compliant table up to " << bound << " in memory\n";
    extend_table(table, bound);
  }
  return table;
}

std::string read_file(const std::string& path) {
  if (!fs::exists(path)) throw IoError("no such file: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json rep_record(const CompliantRep& rep) {
  Json j;
  j["m"] = detail::integer_to_json(rep.m);
  j["coeffs"] = detail::poly_to_json(rep.q);
  j["quality7"] = rep.quality7;
  j["src"] = std::string(to_string(rep.src));
  return j;
}

int cmd_order(const std::string& m_text, std::size_t count, const CliConfig& cfg, std::ostream& out,
              std::ostream& err) {
  const Integer m = parse_positive(m_text, "m");
  if (count < 1) throw UsageError("--count must be at least 1");
  RepTable table;
  if (mpz_odd_p(m.get_mpz_t()) && !naf_is_compliant(m)) table = table_for(m, cfg.table_path, err);
  ConstructOptions opts;
  opts.n_budget = cfg.n_budget;
  const ConstructResult res = construct(m, count, table, opts);
  if (cfg.format == "json") {
    out << certificates_to_json(res.certificates, 2) << '\n';
  } else {
    for (const WeilCertificate& c : res.certificates) {
      out << "m=" << c.m << " n=" << c.n << " g=" << c.g << " R(x) = " << to_string(c.weil_r) << '\n';
    }
  }
  if (res.budget_exhausted) {
    for (const std::string& d : res.diagnostics) err << d << '\n';
    err << "budget exhausted: " << res.certificates.size() << " of " << count << " certificates\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_family(const std::string& kind, std::optional<long> n, std::optional<long> k,
               const std::optional<std::string>& m_text, const CliConfig& cfg, std::ostream& out) {
  if (!n || *n < 0) throw UsageError("--n must be a nonnegative integer");
  const auto nn = static_cast<std::size_t>(*n);
  IntPoly p;
  if (kind == "f") {
    p = family_f(nn);
  } else if (kind == "g") {
    if (!k || *k < 0) throw UsageError("family g needs --k >= 0");
    p = family_g(nn, static_cast<std::size_t>(*k));
  } else {
    if (!m_text) throw UsageError("family " + kind + " needs --m");
    const Integer m = parse_positive(*m_text, "--m");
    try {
      p = kind == "h" ? family_h(m, nn) : h_prime(m, nn);
    } catch (const RequiresPositiveN& e) {
      throw UsageError(e.what());
    } catch (const WrongValuation& e) {
      throw UsageError(e.what());
    }
  }
  if (cfg.format == "json") {
    Json j;
    j["kind"] = kind;
    j["n"] = nn;
    j["coeffs"] = detail::poly_to_json(p);
    out << j.dump() << '\n';
  } else {
    out << to_string(p) << '\n';
  }
  return kExitOk;
}

int cmd_naf(const std::string& m_text, const CliConfig& cfg, std::ostream& out) {
  const Integer m = parse_positive(m_text, "m");
  const BinaryRep rep = naf(m);
  if (cfg.format == "json") {
    Json j;
    j["m"] = detail::integer_to_json(m);
    j["digits"] = detail::poly_to_json(rep.digit_poly());
    j["k"] = rep.k();
    out << j.dump() << '\n';
    return kExitOk;
  }
  out << "digits=[";
  for (std::size_t i = 0; i < rep.digits.size(); ++i) out << (i ? "," : "") << rep.digits[i];
  out << "] k=" << rep.k() << '\n';
  return kExitOk;
}

int cmd_compliant(const std::string& m_text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Integer m = parse_positive(m_text, "m");
  if (mpz_even_p(m.get_mpz_t())) throw UsageError("compliant needs an odd m");
  RepTable table;
  if (!naf_is_compliant(m)) table = table_for(m, cfg.table_path, err);
  const CompliantRep rep = compliant_rep(m, table);
  const auto reasons = check_rep(rep);
  if (cfg.format == "json") {
    out << rep_record(rep).dump() << '\n';
  } else {
    out << "m=" << rep.m << " quality7=" << rep.quality7 << " src=" << to_string(rep.src)
        << " Q(z) = " << to_string(rep.q, 'z') << '\n';
  }
  for (const std::string& r : reasons) err << "m=" << m << ": " << r << '\n';
  return reasons.empty() ? kExitOk : kExitVerifyFailed;
}

struct TableSummary {
  std::size_t failures = 0;
  std::size_t missing_odd = 0;
  std::optional<long> min_quality7_3095;
};

// Checks every entry, reporting failures on err, and collects coverage.
TableSummary audit_table(const RepTable& table, unsigned long max_m, std::ostream& err) {
  TableSummary s;
  for (const auto& [m, rep] : table.entries()) {
    const auto reasons = check_rep(rep);
    if (!reasons.empty()) {
      ++s.failures;
      for (const std::string& r : reasons) err << "m=" << m << ": " << r << '\n';
    }
  }
  for (unsigned long m = 1; m <= max_m; m += 2) {
    const CompliantRep* rep = table.find(m);
    if (!rep) {
      ++s.missing_odd;
      continue;
    }
    if (m >= 3095 && (!s.min_quality7_3095 || rep->quality7 < *s.min_quality7_3095)) s.min_quality7_3095 = rep->quality7;
  }
  return s;
}

std::string min_q_text(const std::optional<long>& q) { return q ? std::to_string(*q) : "none"; }

int cmd_table(long max_m, const std::optional<std::string>& out_path, const CliConfig& cfg, std::ostream& out,
              std::ostream& err) {
  if (max_m < 1) throw UsageError("--max must be at least 1");
  const unsigned long max_odd = static_cast<unsigned long>(max_m % 2 == 0 ? max_m - 1 : max_m);
  const std::string path = out_path.value_or(cfg.table_path);
  RepTable table;
  if (fs::exists(path)) {
    table = RepTable::load(path);
    const TableSummary existing = audit_table(table, 0, err);
    if (existing.failures > 0) {
      err << path << ": " << existing.failures << " existing entries fail verification\n";
      return kExitVerifyFailed;
    }
  }
  TableStats stats;
  extend_table(table, max_odd, &stats);
  table.save(path);

  std::size_t exhaust = 0;
  unsigned long exhaust_max = 0;
  const RepTable seeds = exhaust_low_degree();
  for (const auto& [m, rep] : seeds.entries()) {
    if (m > max_odd) continue;
    ++exhaust;
    exhaust_max = m;
  }
  std::size_t missing = 0;
  std::optional<long> min_q;
  for (unsigned long m = 1; m <= max_odd; m += 2) {
    const CompliantRep* rep = table.find(m);
    if (!rep) {
      ++missing;
    } else if (m >= 3095 && (!min_q || rep->quality7 < *min_q)) {
      min_q = rep->quality7;
    }
  }
  out << "entries=" << table.size() << " exhaust=" << exhaust << " exhaust_max_m=" << exhaust_max
      << " missing_odd=" << missing << " min_quality7_3095_plus=" << min_q_text(min_q)
      << " exact_evaluations=" << stats.exact_evaluations << " fallback_m=" << stats.fallback_m.size() << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(path);
  const Json whole = Json::parse(text, nullptr, false);
  const bool certificates =
      !whole.is_discarded() && (whole.is_array() || (whole.is_object() && whole.contains("version")));
  if (certificates) {
    std::vector<WeilCertificate> certs;
    try {
      certs = certificates_from_json(text);
    } catch (const std::exception& e) {
      err << path << ": malformed certificate: " << e.what() << '\n';
      return kExitVerifyFailed;
    }
    std::size_t failures = 0;
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const auto reasons = certificate_failures(certs[i]);
      if (!reasons.empty()) ++failures;
      for (const std::string& r : reasons) err << "certificate " << i << " (m=" << certs[i].m << "): " << r << '\n';
    }
    out << "certificates=" << certs.size() << " failures=" << failures << '\n';
    return failures == 0 ? kExitOk : kExitVerifyFailed;
  }
  RepTable table;
  try {
    table = RepTable::from_jsonl(text);
  } catch (const std::exception& e) {
    err << path << ": " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  std::size_t failures = 0;
  if (table.to_jsonl() != text) {
    err << path << ": not in canonical form (one compact record per line, sorted by m)\n";
    ++failures;
  }
  const unsigned long max_m = table.empty() ? 0 : table.entries().rbegin()->first;
  const TableSummary s = audit_table(table, max_m, err);
  failures += s.failures;
  out << "records=" << table.size() << " failures=" << failures << " max_m=" << max_m
      << " missing_odd=" << s.missing_odd << " min_quality7_3095_plus=" << min_q_text(s.min_quality7_3095) << '\n';
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified Weil polynomials over F_2 of prescribed order", "weilforge"};
  app.require_subcommand(1);
  CliConfig cfg;
  cfg.table_path = default_table_path();
  const std::vector<std::string> formats{"text", "json"};

  std::string m_text;
  std::size_t count = 1;
  auto* order = app.add_subcommand("order", "Emit certified Weil polynomials of order m");
  order->add_option("m", m_text, "Order")->required();
  order->add_option("--count", count, "Number of certificates");
  order->add_option("--n-max", cfg.n_budget, "Largest n tried for even m")->check(CLI::PositiveNumber);
  order->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
  order->add_option("--table", cfg.table_path, "Compliant representation table (JSONL)");

  std::string family_kind;
  std::optional<long> fam_n;
  std::optional<long> fam_k;
  std::optional<std::string> fam_m;
  auto* family = app.add_subcommand("family", "Print f_n, g_{n,k}, h_{n,m} or h'_{n,m}");
  family->add_option("kind", family_kind)->required()->check(CLI::IsMember({"f", "g", "h", "hprime"}));
  family->add_option("--n", fam_n)->required();
  family->add_option("--k", fam_k);
  family->add_option("--m", fam_m);
  family->add_option("--format", cfg.format)->check(CLI::IsMember(formats));

  auto* naf_cmd = app.add_subcommand("naf", "Nonadjacent form of m");
  naf_cmd->add_option("m", m_text)->required();
  naf_cmd->add_option("--format", cfg.format)->check(CLI::IsMember(formats));

  auto* compliant = app.add_subcommand("compliant", "Compliant representation of an odd m");
  compliant->add_option("m", m_text)->required();
  compliant->add_option("--table", cfg.table_path);
  compliant->add_option("--format", cfg.format)->check(CLI::IsMember(formats));

  long table_max = 0;
  std::optional<std::string> table_out;
  auto* table = app.add_subcommand("table", "Build or extend the compliant representation table");
  table->add_option("--max", table_max, "Largest m covered")->required();
  table->add_option("--out", table_out, "Output path (default: the configured table path)");
  table->add_option("--jobs", cfg.jobs)->check(CLI::PositiveNumber);

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Re-verify a table or certificate file");
  verify->add_option("path", verify_path)->required();

  std::vector<std::string> argv_store{"weilforge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*order) return cmd_order(m_text, count, cfg, out, err);
    if (*family) return cmd_family(family_kind, fam_n, fam_k, fam_m, cfg, out);
    if (*naf_cmd) return cmd_naf(m_text, cfg, out);
    if (*compliant) return cmd_compliant(m_text, cfg, out, err);
    if (*table) return cmd_table(table_max, table_out, cfg, out, err);
    if (*verify) return cmd_verify(verify_path, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const TableMissing& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace weilforge
