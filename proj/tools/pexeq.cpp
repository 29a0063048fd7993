// Command line front end. Subcommands map one-to-one onto the library:
// solve, sieve, cf, verify, abcq. Batch output is deterministic: records
// are sorted, the config echo carries only semantic knobs, and the worker
// count never changes the bytes written.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pexeq/arith.hpp"
#include "pexeq/contfrac.hpp"
#include "pexeq/records.hpp"
#include "pexeq/sieve.hpp"
#include "pexeq/solver.hpp"
#include "pexeq/verify.hpp"
#include "pexeq/version.hpp"

namespace {

using pexeq::records::ordered_json;

struct GlobalOpts {
  std::string out_path;
  std::string format = "jsonl";
  bool resume = false;
  unsigned workers = 1;
};

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All single-record commands go through here; csv is sieve-only.
void emit_lines(const std::vector<std::string>& lines, const GlobalOpts& g) {
  if (g.out_path.empty()) {
    for (const auto& l : lines) std::cout << l << '\n';
    return;
  }
  std::ofstream out(g.out_path, std::ios::trunc);
  if (!out) throw usage_error("cannot open output file: " + g.out_path);
  for (const auto& l : lines) out << l << '\n';
}

std::string render(const ordered_json& rec, const GlobalOpts& g) {
  return g.format == "pretty" ? rec.dump(2) : rec.dump();
}

mpz_class parse_mpz(const std::string& s, const char* what) {
  try {
    return mpz_class(s, 10);
  } catch (const std::invalid_argument&) {
    throw usage_error(std::string(what) + " is not a decimal integer: " + s);
  }
}

// "lo:hi" with lo <= hi; hi is capped to keep the prime sieve in memory.
std::pair<uint64_t, uint64_t> parse_range(const std::string& s, const char* what) {
  constexpr uint64_t kRangeCap = 100000000;
  auto colon = s.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == s.size())
    throw usage_error(std::string(what) + " must look like lo:hi, got: " + s);
  uint64_t lo = 0, hi = 0;
  try {
    size_t used = 0;
    lo = std::stoull(s.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("");
    std::string hs = s.substr(colon + 1);
    hi = std::stoull(hs, &used);
    if (used != hs.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw usage_error(std::string(what) + " has a bad bound in: " + s);
  }
  if (lo > hi) throw usage_error(std::string(what) + " has lo > hi: " + s);
  if (hi > kRangeCap)
    throw usage_error(std::string(what) + " upper bound exceeds 1e8: " + s);
  return {lo, hi};
}

int run_solve(const std::string& a, const std::string& b, const std::string& c,
              const std::string& mode, uint32_t max_z, uint32_t max_bits,
              const GlobalOpts& g) {
  auto inst = pexeq::EquationInstance::create(
      parse_mpz(a, "--a"), parse_mpz(b, "--b"), parse_mpz(c, "--c"),
      mode == "S" ? pexeq::Mode::S : pexeq::Mode::N);
  pexeq::SolutionSet set =
      pexeq::find_solutions(inst, pexeq::SearchBounds{max_z, max_bits});
  emit_lines({render(pexeq::records::solve_record(set), g)}, g);
  return 0;
}

int run_cf_expansion(const std::string& d, size_t terms, const GlobalOpts& g) {
  mpz_class D = parse_mpz(d, "--d");
  pexeq::SurdExpansion e = pexeq::sqrt_cf(D);
  auto conv = pexeq::convergents(D, terms);
  emit_lines({render(pexeq::records::cf_expansion_record(e, conv, terms), g)}, g);
  return 0;
}

int run_cf_lemma35(const std::string& p, unsigned n, const GlobalOpts& g) {
  pexeq::Lemma35Family fam = pexeq::lemma35_expected(parse_mpz(p, "--p"), n);
  pexeq::SurdExpansion direct = pexeq::sqrt_cf(fam.D);
  auto direct_conv = pexeq::convergents(fam.D, 5);
  bool match = pexeq::lemma35_matches(fam, direct, direct_conv);
  emit_lines(
      {render(pexeq::records::cf_lemma35_record(fam, direct, direct_conv, match), g)},
      g);
  return match ? 0 : 1;
}

int run_abcq(const std::string& a, const std::string& b, const std::string& c,
             const GlobalOpts& g) {
  pexeq::AbcTriple t = pexeq::abc_quality(parse_mpz(a, "--a"),
                                          parse_mpz(b, "--b"),
                                          parse_mpz(c, "--c"));
  emit_lines({render(pexeq::records::abcq_record(t), g)}, g);
  return 0;
}

std::string sieve_line(const pexeq::SieveReport& rep, const ordered_json& config,
                       const GlobalOpts& g) {
  if (g.format == "csv") return pexeq::records::csv_row(rep);
  return render(pexeq::records::sieve_record(rep, config), g);
}

int run_sieve_pair(const std::string& p, const std::string& q, const GlobalOpts& g) {
  auto pair = pexeq::CandidatePair::create(parse_mpz(p, "--p"), parse_mpz(q, "--q"));
  pexeq::SieveReport rep = pexeq::full_report(pair);
  ordered_json config{{"scope", "pair"}, {"p", pair.p().get_str()},
                      {"q", pair.q().get_str()}};
  std::vector<std::string> lines;
  if (g.format == "csv") lines.push_back(pexeq::records::csv_header());
  lines.push_back(sieve_line(rep, config, g));
  emit_lines(lines, g);
  return 0;
}

std::vector<uint64_t> odd_primes_in(uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> out;
  for (uint64_t p : pexeq::primes_up_to(hi))
    if (p >= lo && p != 2) out.push_back(p);
  return out;
}

// Longest valid prefix of an existing output file, plus the pairs it holds.
// Anything from the first malformed line on is dropped; a trailing chunk
// without a newline counts as malformed.
struct ResumeState {
  std::vector<std::string> lines;  // kept verbatim, csv header included
  std::set<std::pair<uint64_t, uint64_t>> pairs;
};

std::optional<std::pair<uint64_t, uint64_t>> pair_of_jsonl(const std::string& line) {
  ordered_json rec = ordered_json::parse(line, nullptr, false);
  if (rec.is_discarded() || !rec.is_object()) return std::nullopt;
  if (!rec.contains("p") || !rec.contains("q")) return std::nullopt;
  if (!rec["p"].is_string() || !rec["q"].is_string()) return std::nullopt;
  try {
    return std::make_pair(std::stoull(rec["p"].get<std::string>()),
                          std::stoull(rec["q"].get<std::string>()));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<std::pair<uint64_t, uint64_t>> pair_of_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (fields.size() != 9) return std::nullopt;
  try {
    size_t used = 0;
    uint64_t p = std::stoull(fields[0], &used);
    if (used != fields[0].size()) return std::nullopt;
    uint64_t q = std::stoull(fields[1], &used);
    if (used != fields[1].size()) return std::nullopt;
    return std::make_pair(p, q);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

ResumeState scan_existing(const std::string& path, const std::string& format) {
  ResumeState state;
  std::ifstream in(path, std::ios::binary);
  if (!in) return state;
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  size_t pos = 0;
  bool first = true;
  while (pos < content.size()) {
    size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) break;  // partial trailing line
    std::string line = content.substr(pos, nl - pos);
    if (format == "csv" && first) {
      if (line != pexeq::records::csv_header()) break;
      state.lines.push_back(line);
      first = false;
      pos = nl + 1;
      continue;
    }
    first = false;
    auto pq = format == "csv" ? pair_of_csv(line) : pair_of_jsonl(line);
    if (!pq) break;
    state.lines.push_back(line);
    state.pairs.insert(*pq);
    pos = nl + 1;
  }
  return state;
}

int run_sieve_range(const std::string& p_range, const std::string& q_range,
                    const GlobalOpts& g) {
  auto [plo, phi] = parse_range(p_range, "--p-range");
  auto [qlo, qhi] = parse_range(q_range, "--q-range");
  auto ps = odd_primes_in(plo, phi);
  auto qs = odd_primes_in(qlo, qhi);

  std::vector<std::pair<uint64_t, uint64_t>> pairs;
  pairs.reserve(ps.size() * qs.size());
  for (uint64_t p : ps)
    for (uint64_t q : qs)
      if (p != q) pairs.emplace_back(p, q);
  constexpr size_t kPairCap = 2000000;
  if (pairs.size() > kPairCap)
    throw usage_error("range spans " + std::to_string(pairs.size()) +
                      " pairs; the cap is " + std::to_string(kPairCap));

  ResumeState state;
  if (g.resume) {
    if (g.out_path.empty())
      throw usage_error("--resume needs --out");
    if (g.format == "pretty")
      throw usage_error("--resume works with jsonl or csv only");
    state = scan_existing(g.out_path, g.format);
    std::vector<std::pair<uint64_t, uint64_t>> remaining;
    remaining.reserve(pairs.size());
    for (const auto& pq : pairs)
      if (!state.pairs.count(pq)) remaining.push_back(pq);
    pairs.swap(remaining);
  }

  ordered_json config{{"scope", "range"},
                      {"p_range", p_range},
                      {"q_range", q_range}};

  // Workers stripe over the pair list into a pre-sized slot array, so the
  // final byte stream does not depend on the worker count.
  std::vector<std::string> slots(pairs.size());
  unsigned workers = std::min<unsigned>(g.workers, std::max<size_t>(pairs.size(), 1));
  auto work = [&](unsigned wid) {
    for (size_t i = wid; i < pairs.size(); i += workers) {
      auto pair = pexeq::CandidatePair::create(mpz_class(pairs[i].first),
                                               mpz_class(pairs[i].second));
      slots[i] = sieve_line(pexeq::full_report(pair), config, g);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned wid = 0; wid < workers; ++wid) pool.emplace_back(work, wid);
    for (auto& t : pool) t.join();
  }

  std::vector<std::string> lines;
  lines.reserve(state.lines.size() + slots.size() + 1);
  if (g.format == "csv" && state.lines.empty())
    lines.push_back(pexeq::records::csv_header());
  for (auto& l : state.lines) lines.push_back(std::move(l));
  for (auto& l : slots) lines.push_back(std::move(l));
  emit_lines(lines, g);
  return 0;
}

int run_verify(const pexeq::SuiteResult& r, const GlobalOpts& g) {
  std::vector<std::string> lines;
  lines.reserve(r.records.size() + 1);
  for (const auto& rec : r.records) lines.push_back(render(rec, g));
  lines.push_back(render(pexeq::summary_record(r), g));
  emit_lines(lines, g);
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(pexeq::kToolName) +
               ": solution counting, sieving, and continued fraction checks "
               "for a^x + b^y = c^z"};
  app.set_version_flag("--version",
                       std::string(pexeq::kToolName) + " " + pexeq::kVersion);
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out", g.out_path, "write records to FILE instead of stdout");
  app.add_option("--format", g.format, "record format (default jsonl)")
      ->check(CLI::IsMember({"jsonl", "csv", "pretty"}));
  app.add_flag("--resume", g.resume,
               "keep valid records already in --out and compute only the rest");
  app.add_option("--workers", g.workers, "parallel workers for range sieving")
      ->check(CLI::Range(1u, 256u));

  // solve
  auto* solve_cmd =
      app.add_subcommand("solve", "enumerate solutions of a^x + b^y = c^z");
  std::string sa, sb, sc, smode;
  uint32_t max_z = 25, max_bits = 512;
  solve_cmd->add_option("--a", sa, "base a")->required();
  solve_cmd->add_option("--b", sb, "base b")->required();
  solve_cmd->add_option("--c", sc, "base c")->required();
  solve_cmd->add_option("--mode", smode,
                        "S: distinct primes with a < b; N: coprime non-powers "
                        "with b > a > 1")
      ->required()
      ->check(CLI::IsMember({"S", "N"}));
  solve_cmd->add_option("--max-z", max_z, "largest exponent z (default 25)")
      ->check(CLI::Range(1u, 100000u));
  solve_cmd->add_option("--max-bits", max_bits,
                        "stop once c^z outgrows this width (default 512)")
      ->check(CLI::Range(8u, 1000000u));

  // sieve
  auto* sieve_cmd = app.add_subcommand(
      "sieve", "run the prime pair conditions for 2^x + p^y = q^z");
  std::string vp, vq, p_range, q_range;
  auto* opt_p = sieve_cmd->add_option("--p", vp, "odd prime p");
  auto* opt_q = sieve_cmd->add_option("--q", vq, "odd prime q");
  auto* opt_pr = sieve_cmd->add_option("--p-range", p_range, "p range lo:hi");
  auto* opt_qr = sieve_cmd->add_option("--q-range", q_range, "q range lo:hi");
  opt_p->excludes(opt_pr)->excludes(opt_qr);
  opt_q->excludes(opt_pr)->excludes(opt_qr);
  opt_p->needs(opt_q);
  opt_q->needs(opt_p);
  opt_pr->needs(opt_qr);
  opt_qr->needs(opt_pr);

  // cf
  auto* cf_cmd = app.add_subcommand(
      "cf", "continued fraction expansion of sqrt(d) with convergent norms");
  std::string cd, cp;
  size_t terms = 10;
  unsigned cn = 1;
  bool lemma35_flag = false;
  auto* opt_d = cf_cmd->add_option("--d", cd, "radicand (positive nonsquare)");
  auto* opt_terms =
      cf_cmd->add_option("--terms", terms, "convergents to emit (default 10)")
          ->check(CLI::Range(size_t(1), size_t(10000)));
  auto* opt_l35 = cf_cmd->add_flag(
      "--lemma35", lemma35_flag,
      "check the closed form for sqrt(p^2n + 4) against direct expansion");
  auto* opt_cp = cf_cmd->add_option("--p", cp, "odd p >= 3 for --lemma35");
  auto* opt_cn = cf_cmd->add_option("--n", cn, "exponent n >= 1 for --lemma35")
                     ->check(CLI::Range(1u, 64u));
  opt_l35->excludes(opt_d)->excludes(opt_terms);
  opt_cp->needs(opt_l35);
  opt_cn->needs(opt_l35);

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "sweep one statement over a parameter box");
  std::string suite;
  verify_cmd
      ->add_option("--suite", suite,
                   "one of lemma21 lemma22 lemma23 lemma24 lemma32 lemma34 "
                   "lemma35 observations conjecture")
      ->required();
  uint64_t prime_max = 0, base_max = 0, d_max = 0, p_max = 0, obs3_p_max = 0,
           y_bound = 0;
  unsigned k_max = 0, box = 0, n_powers = 0, n_max = 0, t_max = 0;
  uint32_t vmax_z = 0, vmax_bits = 0;
  auto* o_prime_max = verify_cmd->add_option("--prime-max", prime_max);
  auto* o_k_max = verify_cmd->add_option("--k-max", k_max);
  auto* o_box = verify_cmd->add_option("--box", box);
  auto* o_base_max = verify_cmd->add_option("--base-max", base_max);
  auto* o_d_max = verify_cmd->add_option("--d-max", d_max);
  auto* o_n_powers = verify_cmd->add_option("--n-powers", n_powers);
  auto* o_y_bound = verify_cmd->add_option("--y-bound", y_bound);
  auto* o_p_max = verify_cmd->add_option("--p-max", p_max);
  auto* o_n_max = verify_cmd->add_option("--n-max", n_max);
  auto* o_obs3 = verify_cmd->add_option("--obs3-p-max", obs3_p_max);
  auto* o_t_max = verify_cmd->add_option("--t-max", t_max);
  auto* o_vmax_z = verify_cmd->add_option("--max-z", vmax_z);
  auto* o_vmax_bits = verify_cmd->add_option("--max-bits", vmax_bits);

  // abcq
  auto* abcq_cmd = app.add_subcommand(
      "abcq", "radical and quality of a + b = c with coprime a, b");
  std::string qa, qb, qc;
  abcq_cmd->add_option("--a", qa)->required();
  abcq_cmd->add_option("--b", qb)->required();
  abcq_cmd->add_option("--c", qc)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (g.format == "csv" && !sieve_cmd->parsed())
      throw usage_error("csv format is available for sieve only");
    if (g.resume && !sieve_cmd->parsed())
      throw usage_error("--resume is available for sieve ranges only");

    if (solve_cmd->parsed())
      return run_solve(sa, sb, sc, smode, max_z, max_bits, g);

    if (sieve_cmd->parsed()) {
      if (opt_p->count() && opt_q->count()) {
        if (g.resume) throw usage_error("--resume is for range sieving only");
        return run_sieve_pair(vp, vq, g);
      }
      if (opt_pr->count() && opt_qr->count())
        return run_sieve_range(p_range, q_range, g);
      throw usage_error("sieve needs --p/--q or --p-range/--q-range");
    }

    if (cf_cmd->parsed()) {
      if (lemma35_flag) {
        if (!opt_cp->count() || !opt_cn->count())
          throw usage_error("--lemma35 needs --p and --n");
        return run_cf_lemma35(cp, cn, g);
      }
      if (!opt_d->count()) throw usage_error("cf needs --d or --lemma35");
      return run_cf_expansion(cd, terms, g);
    }

    if (verify_cmd->parsed()) {
      pexeq::SuiteResult r;
      if (suite == "lemma21")
        r = pexeq::suite_lemma21(o_prime_max->count() ? prime_max : 50,
                                 o_k_max->count() ? k_max : 12,
                                 o_box->count() ? box : 30);
      else if (suite == "lemma22")
        r = pexeq::suite_lemma22(o_base_max->count() ? base_max : 40,
                                 o_box->count() ? box : 40);
      else if (suite == "lemma23")
        r = pexeq::suite_lemma23(o_prime_max->count() ? prime_max : 100000);
      else if (suite == "lemma24")
        r = pexeq::suite_lemma24(o_prime_max->count() ? prime_max : 100000);
      else if (suite == "lemma32")
        r = pexeq::suite_lemma32(o_d_max->count() ? d_max : 2000,
                                 o_n_powers->count() ? n_powers : 4);
      else if (suite == "lemma34")
        r = pexeq::suite_lemma34(o_d_max->count() ? d_max : 300,
                                 o_y_bound->count() ? y_bound : 200);
      else if (suite == "lemma35")
        r = pexeq::suite_lemma35(o_p_max->count() ? p_max : 49,
                                 o_n_max->count() ? n_max : 3);
      else if (suite == "observations")
        r = pexeq::suite_observations(o_p_max->count() ? p_max : 1000,
                                      o_obs3->count() ? obs3_p_max : 500,
                                      o_t_max->count() ? t_max : 64);
      else if (suite == "conjecture")
        r = pexeq::suite_conjecture(o_vmax_z->count() ? vmax_z : 25,
                                    o_vmax_bits->count() ? vmax_bits : 256);
      else
        throw usage_error("unknown suite: " + suite);
      return run_verify(r, g);
    }

    if (abcq_cmd->parsed()) return run_abcq(qa, qb, qc, g);

    throw usage_error("no subcommand given");
  } catch (const std::exception& e) {
    std::cerr << pexeq::kToolName << ": " << e.what() << '\n';
    return 2;
  }
}
