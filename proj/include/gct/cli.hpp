#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gct/digest.hpp"
#include "gct/error.hpp"
#include "gct/flatten.hpp"
#include "gct/geometry.hpp"
#include "gct/hhh.hpp"
#include "gct/latin.hpp"
#include "gct/poly_io.hpp"
#include "gct/polarize.hpp"
#include "gct/reptheory.hpp"
#include "gct/zoo.hpp"

namespace gct::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kCapacity = 3 };

using Record = nlohmann::ordered_json;

// One command's result: named fields in insertion order, or a raw document
// (polynomial and witness files) printed verbatim.
struct Report {
  Report() = default;
  explicit Report(std::string cmd) : command(std::move(cmd)) {}

  std::string command;
  Record fields = Record::object();
  std::optional<std::string> raw;
  int exit_code = kOk;

  template <typename T>
  Report& set(const std::string& key, T&& value) {
    fields[key] = std::forward<T>(value);
    return *this;
  }

  Report& verdict(const std::string& key, bool ok) {
    fields[key] = ok ? "PASS" : "FAIL";
    if (!ok) exit_code = kVerificationFailed;
    return *this;
  }

  std::string text() const {
    if (raw) return *raw;
    std::string out;
    for (auto it = fields.begin(); it != fields.end(); ++it) out += it.key() + ": " + render(it.value()) + "\n";
    return out;
  }

  std::string json() const {
    if (raw) return *raw;
    Record r = Record::object();
    r["command"] = command;
    r["exit_code"] = exit_code;
    r["result"] = fields;
    return r.dump() + "\n";
  }

  Record to_record() const {
    Record r = {{"command", command}, {"fields", fields}, {"exit_code", exit_code}};
    if (raw) r["raw"] = *raw;
    return r;
  }

  static Report from_record(const Record& r) {
    Report rep;
    rep.command = r.at("command").get<std::string>();
    rep.fields = r.at("fields");
    rep.exit_code = r.at("exit_code").get<int>();
    if (r.contains("raw")) rep.raw = r.at("raw").get<std::string>();
    return rep;
  }

 private:
  static std::string render(const Record& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      bool flat = true;
      for (const auto& x : v) flat = flat && !x.is_structured();
      if (flat) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ", ") + render(x);
        return "[" + s + "]";
      }
    }
    return v.dump();
  }
};

struct Globals {
  bool json = false;
  bool no_cache = false;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string cache_dir;
  std::string manifest_path;
};

inline std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("GCT_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "gct";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "gct";
  return std::filesystem::temp_directory_path() / "gct-cache";
}

// A polynomial argument is a file in the polynomial format, or name:p1,p2 for a zoo family.
inline Polynomial load_polynomial_arg(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return load_polynomial(arg);
  auto colon = arg.find(':');
  std::string name = arg.substr(0, colon);
  std::vector<long> params;
  if (colon != std::string::npos) {
    std::stringstream ss(arg.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        params.push_back(std::stol(item));
      } catch (const std::exception&) {
        throw FormatError("bad parameter '" + item + "' in '" + arg + "'");
      }
    }
  }
  for (const auto& f : zoo::families())
    if (f.name == name) return zoo::make(name, params);
  throw FormatError("'" + arg + "' is neither a polynomial file nor a family spec");
}

inline std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw FormatError("bad list entry '" + item + "'");
    }
  }
  return out;
}

inline std::vector<Scalar> parse_point(const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar(item));
  return out;
}

inline Record ranks_json(const std::vector<std::size_t>& r) { return Record(r); }

inline Record certificate_fields(const RankCertificate& c) {
  return {{"rank", c.rank}, {"rows", c.rows}, {"cols", c.cols}, {"method", c.method}};
}

inline Record partitions_json(const std::vector<Partition>& ps) {
  Record a = Record::array();
  for (const auto& p : ps) a.push_back(to_string(p));
  return a;
}

// The manifest of a run: everything that determines its output.
inline Record manifest_inputs(const std::vector<std::string>& args, const Globals& g) {
  Record inputs = Record::object();
  for (const auto& a : args)
    if (std::filesystem::is_regular_file(a)) inputs[a] = sha256_hex(read_file(a));
  std::string command = args.empty() ? "" : args[0];
  if (args.size() > 1 && args[1].rfind("-", 0) != 0) command += " " + args[1];
  return {{"command", command},
          {"parameters", args},
          {"inputs", inputs},
          {"seed", g.seed},
          {"code_version", kVersion}};
}

class App {
 public:
  App() : app_("Exact computations for geometric complexity theory", "gct") { build(); }

  int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app_.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app_.help();
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out << kVersion << "\n";
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app_.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "gct: " << e.what() << "\n";
      return kUsage;
    }
    if (!action_) {
      err << app_.help();
      return kUsage;
    }
    try {
      std::vector<std::string> positional;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (is_global_flag(args[i])) {
          if (takes_value(args[i]) && args[i].find('=') == std::string::npos) ++i;
          continue;
        }
        positional.push_back(args[i]);
      }
      Report rep = cached(positional, err);
      out << (g_.json ? rep.json() : rep.text());
      return rep.exit_code;
    } catch (const CapacityError& e) {
      err << "gct: capacity exceeded: " << e.what() << "\n";
      return kCapacity;
    } catch (const Error& e) {
      err << "gct: " << e.what() << "\n";
      return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
      err << "gct: " << e.what() << "\n";
      return kUsage;
    }
  }

 private:
  static bool is_global_flag(const std::string& a) {
    for (const char* f : {"--json", "--no-cache", "--seed", "--threads", "--cache-dir", "--manifest"})
      if (a == f || a.rfind(std::string(f) + "=", 0) == 0) return true;
    return false;
  }
  static bool takes_value(const std::string& a) { return a != "--json" && a != "--no-cache"; }

  Report cached(const std::vector<std::string>& args, std::ostream& err) {
    Record manifest = manifest_inputs(args, g_);
    const std::string key = sha256_hex(manifest.dump());
    std::filesystem::path dir = g_.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(g_.cache_dir);
    std::filesystem::path entry = dir / (key + ".json");
    if (!g_.no_cache && std::filesystem::exists(entry)) {
      try {
        Record stored = Record::parse(read_file(entry.string()));
        Report rep = Report::from_record(stored.at("report"));
        write_manifest(stored.at("manifest"));
        return rep;
      } catch (const std::exception& e) {
        err << "gct: ignoring unreadable cache entry " << entry.string() << "\n";
      }
    }
    auto start = std::chrono::steady_clock::now();
    Report rep = action_();
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest["seconds"] = seconds;
    manifest["result_digest"] = sha256_hex(rep.text());
    manifest["exit_code"] = rep.exit_code;
    write_manifest(manifest);
    if (!g_.no_cache) {
      try {
        std::filesystem::create_directories(dir);
        auto tmp = entry;
        tmp += ".tmp";
        {
          std::ofstream f(tmp);
          f << Record{{"manifest", manifest}, {"report", rep.to_record()}}.dump(1) << "\n";
        }
        std::filesystem::rename(tmp, entry);
      } catch (const std::exception& e) {
        err << "gct: could not write cache entry: " << e.what() << "\n";
      }
    }
    return rep;
  }

  void write_manifest(const Record& m) const {
    if (g_.manifest_path.empty()) return;
    std::ofstream f(g_.manifest_path);
    if (!f) throw FormatError("cannot write manifest " + g_.manifest_path);
    f << m.dump(1) << "\n";
  }

  HhhOptions hhh_options() const {
    HhhOptions o;
    o.threads = g_.threads;
    if (max_dim_) o.max_dim = *max_dim_;
    if (exact_limit_) o.exact_limit = *exact_limit_;
    return o;
  }

  std::optional<std::vector<unsigned>> weight() const {
    if (weight_.empty()) return std::nullopt;
    std::vector<unsigned> w;
    for (long x : parse_list(weight_)) {
      if (x < 0) throw DomainError("weights must be non-negative");
      w.push_back(static_cast<unsigned>(x));
    }
    return w;
  }

  void build() {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_flag("--json", g_.json, "Print a single JSON record");
    app_.add_flag("--no-cache", g_.no_cache, "Neither read nor write the result cache");
    app_.add_option("--seed", g_.seed, "Seed for random points")->capture_default_str();
    app_.add_option("--threads", g_.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app_.add_option("--cache-dir", g_.cache_dir, "Cache directory (default $GCT_CACHE_DIR or ~/.cache/gct)");
    app_.add_option("--manifest", g_.manifest_path, "Write the run manifest to this file");
    app_.set_version_flag("--version", kVersion);
    build_zoo();
    build_flatten();
    build_hhh();
    build_rep();
    build_latin();
    build_geo();
  }

  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, std::function<Report()> f) {
    auto* s = parent->add_subcommand(name, help);
    s->callback([this, f = std::move(f)] { action_ = f; });
    return s;
  }

  void build_zoo() {
    auto* zoo = app_.add_subcommand("zoo", "Polynomial families and decomposition witnesses");
    zoo->require_subcommand(1);
    leaf(zoo, "list", "List the polynomial families", [] {
      Report r{"zoo list"};
      for (const auto& f : zoo::families()) r.set(f.name, (f.params.empty() ? "" : "(" + f.params + ") ") + f.summary);
      return r;
    });
    auto* make = leaf(zoo, "make", "Write a family member in the polynomial format", [this] {
      Report r{"zoo make"};
      r.raw = to_text(zoo::make(name_, ints_));
      return r;
    });
    make->add_option("name", name_, "Family name")->required();
    make->add_option("params", ints_, "Family parameters");
    auto* witness = leaf(zoo, "witness", "Write a ryser, fischer or benor witness file", [this] {
      Report r{"zoo witness"};
      auto need = [&](std::size_t k) {
        if (ints_.size() != k) throw DomainError(name_ + " takes " + std::to_string(k) + " parameter(s)");
        for (long x : ints_)
          if (x < 1) throw DomainError("witness parameters must be positive");
      };
      zoo::Witness w;
      if (name_ == "ryser") need(1), w = zoo::ryser_decomposition(ints_[0]);
      else if (name_ == "fischer") need(1), w = zoo::fischer_decomposition(ints_[0]);
      else if (name_ == "benor") need(2), w = zoo::benor_decomposition(ints_[0], ints_[1]);
      else throw DomainError("unknown witness '" + name_ + "'");
      r.raw = zoo::to_json(w).dump(1) + "\n";
      return r;
    });
    witness->add_option("kind", name_, "ryser n | fischer n | benor m k")->required();
    witness->add_option("params", ints_, "Parameters");
    auto* verify = leaf(zoo, "verify", "Check a witness file against a target polynomial", [this] {
      Report r{"zoo verify"};
      zoo::Witness w;
      try {
        w = zoo::witness_from_json(nlohmann::json::parse(read_file(file_)));
      } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("witness is not JSON: ") + e.what());
      }
      Polynomial target = load_polynomial_arg(file2_);
      bool ok = std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, zoo::WaringDecomposition>) {
              r.set("kind", "waring").set("terms", x.terms.size());
              return zoo::verify_waring(x, target);
            } else if constexpr (std::is_same_v<T, zoo::ChowDecomposition>) {
              r.set("kind", "chow").set("terms", x.terms.size());
              return zoo::verify_chow(x, target);
            } else {
              r.set("kind", "det").set("n", x.n);
              return zoo::verify_det_expression(x, target);
            }
          },
          w);
      r.verdict("verified", ok);
      return r;
    });
    verify->add_option("witness", file_, "Witness file")->required();
    verify->add_option("target", file2_, "Target polynomial")->required();
  }

  void build_flatten() {
    auto* fl = app_.add_subcommand("flatten", "Flattening ranks and border-rank lower bounds");
    fl->require_subcommand(1);
    auto* rank = leaf(fl, "rank", "Exact rank of the (k, d-k) flattening", [this] {
      Polynomial p = load_polynomial_arg(file_);
      auto c = exact_rank(polarize(p, k_));
      Report r{"flatten rank"};
      r.set("k", k_);
      Record fields = certificate_fields(c);
      for (auto& [key, v] : fields.items()) r.set(key, v);
      return r;
    });
    rank->add_option("poly", file_, "Polynomial file or family spec")->required();
    rank->add_option("--k", k_, "Degree of the differential operators")->required();
    for (const char* which : {"waring-lb", "chow-lb"}) {
      std::string name = which;
      auto* lb = leaf(fl, name, name == "waring-lb" ? "Border Waring rank lower bound" : "Border Chow rank lower bound",
                      [this, name] {
                        Polynomial p = load_polynomial_arg(file_);
                        auto b = name == "waring-lb" ? waring_border_lower_bound(p) : chow_border_lower_bound(p);
                        Report r{"flatten " + name};
                        r.set("bound", b.bound).set("best_k", b.best_k).set("ranks", ranks_json(b.ranks));
                        return r;
                      });
      lb->add_option("poly", file_, "Polynomial file or family spec")->required();
    }
    auto* sh = leaf(fl, "shifted", "Dimension of the shifted partials span", [this] {
      Polynomial p = load_polynomial_arg(file_);
      auto c = shifted_partials_dim(p, k_, l_);
      Report r{"flatten shifted"};
      r.set("k", k_).set("l", l_).set("dim", c.rank).set("generators", c.cols).set("method", c.method);
      return r;
    });
    sh->add_option("poly", file_, "Polynomial file or family spec")->required();
    sh->add_option("--k", k_, "Order of the partials")->required();
    sh->add_option("--l", l_, "Degree of the shifting monomials")->required();
  }

  void add_dnv(CLI::App* s) {
    s->add_option("d", d_, "Outer degree")->required();
    s->add_option("n", n_, "Inner degree")->required();
    s->add_option("v", v_, "Dimension")->required();
    s->add_option("--max-dim", max_dim_, "Largest weight space handled");
    s->add_option("--exact-limit", exact_limit_, "Largest weight space ranked by exact elimination");
  }

  void build_hhh() {
    auto* hh = app_.add_subcommand("hhh", "The Hermite-Hadamard-Howe map S^d(S^n V) -> S^n(S^d V)");
    hh->require_subcommand(1);
    auto rank_report = [this](const std::string& cmd) {
      auto o = hhh_options();
      auto w = weight();
      RankCertificate c = w ? hhh_rank(gct::build_hhh(d_, n_, v_, w, o), o) : hhh_rank(d_, n_, v_, o);
      Report r{cmd};
      r.set("d", d_).set("n", n_).set("v", v_);
      if (w) r.set("weight", *w);
      r.set("rank", c.rank).set("domain_dim", c.rows).set("codomain_dim", c.cols);
      r.set("kernel_dim", c.rows - c.rank).set("method", c.method);
      return r;
    };
    auto* rank = leaf(hh, "rank", "Rank of h_{d,n} on C^v", [rank_report] { return rank_report("hhh rank"); });
    add_dnv(rank);
    rank->add_option("--weight", weight_, "Restrict to one weight space, e.g. 3,3,3");
    auto* kernel = leaf(hh, "kernel", "Kernel dimension of h_{d,n} on C^v", [rank_report] {
      Report r = rank_report("hhh kernel");
      Report k{"hhh kernel"};
      for (const char* key : {"d", "n", "v", "weight", "kernel_dim", "domain_dim", "method"})
        if (r.fields.contains(key)) k.set(key, r.fields[key]);
      return k;
    });
    add_dnv(kernel);
    kernel->add_option("--weight", weight_, "Restrict to one weight space");
    auto* ch = leaf(hh, "character", "GL(V)-decomposition of the kernel", [this] {
      std::vector<Partition> targets;
      for (const auto& t : targets_) targets.push_back(parse_partition(t));
      auto kc = kernel_character(d_, n_, v_, hhh_options(), targets);
      Report r{"hhh character"};
      r.set("d", d_).set("n", n_).set("v", v_);
      Record mult = Record::object();
      for (const auto& [pi, a] : kc.multiplicities) mult[to_string(pi)] = to_string(a);
      r.set("multiplicities", mult);
      r.set("complete", kc.complete());
      r.set("skipped", partitions_json(kc.skipped));
      r.set("unresolved", partitions_json(kc.unresolved));
      r.set("method", kc.method);
      return r;
    });
    add_dnv(ch);
    ch->add_option("--target", targets_, "Only resolve these partitions (repeatable)");
  }

  void build_rep() {
    auto* rep = app_.add_subcommand("rep", "Symmetric group characters and multiplicities");
    rep->require_subcommand(1);
    auto* ch = leaf(rep, "char", "Character value chi_lambda(rho), or the whole character", [this] {
      Partition lambda = parse_partition(part1_);
      Report r{"rep char"};
      r.set("lambda", to_string(lambda));
      if (!part2_.empty()) {
        Partition rho = parse_partition(part2_);
        r.set("rho", to_string(rho)).set("value", to_string(character(lambda, rho)));
      } else {
        Record values = Record::object();
        for (const auto& [rho, x] : character(lambda)) values[to_string(rho)] = to_string(x);
        r.set("values", values);
      }
      return r;
    });
    ch->add_option("lambda", part1_, "Partition, e.g. 3,2,1")->required();
    ch->add_option("rho", part2_, "Cycle type");
    auto* kron = leaf(rep, "kron", "Kronecker coefficient g(pi, mu, nu)", [this] {
      Partition a = parse_partition(part1_), b = parse_partition(part2_), c = parse_partition(part3_);
      Report r{"rep kron"};
      r.set("pi", to_string(a)).set("mu", to_string(b)).set("nu", to_string(c));
      r.set("kronecker", to_string(kronecker(a, b, c, g_.threads)));
      return r;
    });
    kron->add_option("pi", part1_)->required();
    kron->add_option("mu", part2_)->required();
    kron->add_option("nu", part3_)->required();
    auto* sk = leaf(rep, "skron", "Symmetric Kronecker coefficient sk(pi; mu, mu)", [this] {
      Partition a = parse_partition(part1_), b = parse_partition(part2_);
      Report r{"rep skron"};
      r.set("pi", to_string(a)).set("mu", to_string(b));
      r.set("kronecker", to_string(kronecker(a, b, b, g_.threads)));
      r.set("symmetric_kronecker", to_string(symmetric_kronecker(a, b, g_.threads)));
      return r;
    });
    sk->add_option("pi", part1_)->required();
    sk->add_option("mu", part2_)->required();
    auto* pl = leaf(rep, "pleth", "Multiplicity of S_pi in S^d(S^n V)", [this] {
      Partition pi = parse_partition(part1_);
      Report r{"rep pleth"};
      r.set("pi", to_string(pi)).set("d", d_).set("n", n_);
      r.set("multiplicity", to_string(plethysm_mult(pi, d_, n_)));
      if (characters_) r.set("multiplicity_by_characters", to_string(plethysm_mult_characters(pi, d_, n_, g_.threads)));
      return r;
    });
    pl->add_option("pi", part1_)->required();
    pl->add_option("d", d_)->required();
    pl->add_option("n", n_)->required();
    pl->add_flag("--characters", characters_, "Also compute through the power-sum expansion");
    auto* ob = leaf(rep, "obstruct", "Occurrence obstruction test against det_n", [this] {
      Partition pi = parse_partition(part1_);
      auto v = occurrence_obstruction_test(pi, d_, n_, g_.threads);
      Report r{"rep obstruct"};
      r.set("pi", to_string(v.pi)).set("d", v.d).set("n", v.n);
      r.set("multiplicity", to_string(v.mult)).set("kronecker", to_string(v.kron));
      r.set("symmetric_kronecker", to_string(v.sk));
      r.set("representation_obstruction", v.representation_obstruction);
      r.set("occurrence_obstruction", v.occurrence_obstruction);
      return r;
    });
    ob->add_option("pi", part1_)->required();
    ob->add_option("d", d_)->required();
    ob->add_option("n", n_)->required();
    auto* us = leaf(rep, "useful", "Necessary conditions for usefulness against (n, m)", [this] {
      Partition pi = parse_partition(part1_);
      Report r{"rep useful"};
      r.set("pi", to_string(pi)).set("d", d_).set("n", n_).set("m", m_);
      r.set("passes_filter", gct_useful_filter(pi, d_, n_, m_));
      return r;
    });
    us->add_option("pi", part1_)->required();
    us->add_option("d", d_)->required();
    us->add_option("n", n_)->required();
    us->add_option("m", m_)->required();
  }

  void build_latin() {
    auto* la = app_.add_subcommand("latin", "Latin square sign counts and pairings");
    la->require_subcommand(1);
    auto* count = leaf(la, "count", "Count Latin squares of order n by sign", [this] {
      LatinOptions o;
      o.threads = g_.threads;
      if (cap_) o.cap = *cap_;
      if (resume_) {
        auto dir = g_.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(g_.cache_dir);
        o.checkpoint = dir / ("latin-" + std::to_string(n_) + ".checkpoint.json");
      }
      auto c = alon_tarsi_count(n_, o);
      Report r{"latin count"};
      r.set("n", n_).set("total", to_string(c.total()));
      r.set("even", to_string(c.count_plus)).set("odd", to_string(c.count_minus));
      r.set("difference", to_string(c.difference()));
      r.set("column_even", to_string(c.column_count_plus)).set("column_odd", to_string(c.column_count_minus));
      r.set("column_difference", to_string(c.column_difference()));
      return r;
    });
    count->add_option("n", n_)->required();
    count->add_flag("--resume", resume_, "Keep a checkpoint in the cache directory and resume from it");
    count->add_option("--cap", cap_, "Largest order allowed (default 5)");
    auto* pair = leaf(la, "pairing", "Pairing <perm_n^n, det_n^n> or <prod x_ij, det_n^n>", [this] {
      Report r{"latin pairing"};
      r.set("n", n_).set("pairing", all_vars_ ? "all-variables" : "perm-det");
      r.set("value", to_string(all_vars_ ? pairing_allvars_det(n_) : pairing_perm_det(n_)));
      return r;
    });
    pair->add_option("n", n_)->required();
    pair->add_flag("--all-vars", all_vars_, "Pair with the product of all variables");
  }

  void build_geo() {
    auto* geo = app_.add_subcommand("geo", "Hessians, characteristic polynomials and stabilizers");
    geo->require_subcommand(1);
    auto* hs = leaf(geo, "hessian", "Hessian matrix of second partials", [this] {
      PolyMatrix h = hessian(load_polynomial_arg(file_));
      Report r{"geo hessian"};
      Record rows = Record::array();
      for (std::size_t i = 0; i < h.size(); ++i) {
        Record row = Record::array();
        for (std::size_t j = 0; j < h.size(); ++j) row.push_back(pretty(h(i, j)));
        rows.push_back(row);
      }
      r.set("size", h.size()).set("matrix", rows);
      return r;
    });
    hs->add_option("poly", file_)->required();
    auto* cp = leaf(geo, "cp", "Coefficient cp_s of the characteristic polynomial of the Hessian", [this] {
      PolyMatrix h = hessian(load_polynomial_arg(file_));
      Polynomial c = charpoly_coeff(h, s_, g_.threads);
      Report r{"geo cp"};
      r.set("s", s_).set("terms", c.size());
      if (!c.is_zero()) r.set("degree", *c.degree());
      r.set("cp", pretty(c));
      return r;
    });
    cp->add_option("poly", file_)->required();
    cp->add_option("s", s_)->required();
    auto* sf = leaf(geo, "sfturbo", "Identities for the Hessian of det_v", [this] {
      std::set<unsigned> which;
      if (!list_.empty())
        for (long x : parse_list(list_)) {
          if (x < 1) throw DomainError("coefficient indices start at 1");
          which.insert(static_cast<unsigned>(x));
        }
      auto rep = verify_sfturbo(v_, which, g_.threads);
      Report r{"geo sfturbo"};
      r.set("v", v_);
      for (const auto& c : rep.checks) {
        r.verdict(c.name, c.ok);
        r.set(c.name + " detail", c.detail);
      }
      return r;
    });
    sf->add_option("v", v_)->required();
    sf->add_option("--coeffs", list_, "Coefficients to check, e.g. 1,3,5");
    auto* disc = leaf(geo, "discriminant", "det(H(Delta)) = 3888 Delta^2 for the binary cubic discriminant", [this] {
      Polynomial delta = file_.empty() ? zoo::discriminant() : load_polynomial_arg(file_);
      Report r{"geo discriminant"};
      r.verdict("det(H(Δ)) = 3888·Δ²", verify_discriminant_identity(delta));
      return r;
    });
    disc->add_option("poly", file_, "Alternative quartic in 4 variables");
    auto* cay = leaf(geo, "cayley", "Cayley identity det_n(d) det_n^{s+1} = (s+n)!/s! det_n^s", [this] {
      Report r{"geo cayley"};
      r.set("n", n_).set("s", s_).set("factor", to_string(Integer(factorial(s_ + n_) / factorial(s_))));
      r.verdict("identity", cayley_check(n_, s_));
      return r;
    });
    cay->add_option("n", n_)->required();
    cay->add_option("s", s_)->required();
    auto* syl = leaf(geo, "sylfranke", "det(A)^p divides cp_{binom(v-1,k)+p} of the k-th compound", [this] {
      auto div = sylvester_franke_division(v_, k_, p_, g_.threads);
      Report r{"geo sylfranke"};
      r.set("v", v_).set("k", k_).set("p", p_);
      r.set("coefficient", binomial(v_ - 1, k_).get_ui() + p_);
      bool ok = div.remainder.is_zero();
      if (ok) r.set("cofactor_terms", div.quotient.size());
      else
        r.set("remainder_leading_term",
              pretty(Polynomial::monomial(div.remainder.leading_term().monomial, div.remainder.leading_term().coeff)));
      r.verdict("divisible", ok);
      return r;
    });
    syl->add_option("v", v_)->required();
    syl->add_option("k", k_)->required();
    syl->add_option("p", p_)->required();
    auto* dd = leaf(geo, "dualdim", "Dimension of the dual variety at a smooth point", [this] {
      Polynomial p = load_polynomial_arg(file_);
      std::vector<Scalar> w;
      if (!point_.empty()) {
        w = parse_point(point_);
      } else if (rank_ > 0) {
        std::size_t side = 0;
        while (side * side < p.num_vars()) ++side;
        if (side * side != p.num_vars()) throw DimensionError("--rank needs a polynomial in n^2 variables");
        std::mt19937_64 rng(g_.seed);
        w = random_matrix_of_rank(side, static_cast<std::size_t>(rank_), rng);
      } else {
        throw DomainError("dualdim needs --point or --rank");
      }
      Report r{"geo dualdim"};
      Record pt = Record::array();
      for (const auto& x : w) pt.push_back(to_string(x));
      r.set("point", pt).set("dual_dim", dual_dimension_at(p, w));
      return r;
    });
    dd->add_option("poly", file_)->required();
    dd->add_option("--point", point_, "Comma-separated rational coordinates");
    dd->add_option("--rank", rank_, "Random n x n matrix of this rank, from --seed");
    auto* st = leaf(geo, "stab", "Dimension of the stabilizer Lie algebra in gl(V)", [this] {
      Polynomial p = load_polynomial_arg(file_);
      Report r{"geo stab"};
      r.set("num_vars", p.num_vars()).set("stabilizer_dim", stabilizer_lie_dim(p));
      return r;
    });
    st->add_option("poly", file_)->required();
  }

  CLI::App app_;
  Globals g_;
  std::function<Report()> action_;

  std::string name_, file_, file2_, weight_, part1_, part2_, part3_, list_, point_;
  std::vector<long> ints_;
  std::vector<std::string> targets_;
  unsigned k_ = 0, l_ = 0, d_ = 0, n_ = 0, v_ = 0, m_ = 0, s_ = 0, p_ = 0;
  long rank_ = 0;
  std::optional<std::size_t> max_dim_, exact_limit_;
  std::optional<unsigned> cap_;
  bool characters_ = false, resume_ = false, all_vars_ = false;
};

inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  App app;
  return app.run(args, out, err);
}

}  // namespace gct::cli
