#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lawvere/correspondence.hpp"
#include "lawvere/distlaw.hpp"
#include "lawvere/factorization.hpp"
#include "lawvere/profunctor.hpp"
#include "lawvere/registry.hpp"
#include "lawvere/term_text.hpp"

using namespace lawvere;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::size_t default_samples() {
  if (const char* env = std::getenv("LAWVERE_SAMPLES")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      throw structural_error(std::string("LAWVERE_SAMPLES is not a number: ") + env);
    }
  }
  return 500;
}

struct Common {
  bool json = false;
  bool timing = false;
  std::string output;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

void emit(const Common& common, const json& j, const std::string& text) {
  std::string body = common.json ? j.dump(2) + "\n" : text;
  if (common.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(common.output);
  if (!out) throw structural_error("cannot write " + common.output);
  out << body;
}

std::string summary(const Report& r) {
  std::string s = r.subject + ": " + (r.ok() ? "PASS" : "FAIL") + " (" + std::to_string(r.pass_count) + "/" +
                  std::to_string(r.sample_count) + ")\n";
  for (const auto& [k, v] : r.stability) s += "  stable " + k + ": " + (v ? "yes" : "no") + "\n";
  if (!r.ok()) s += "  first failure: " + r.failures.front().dump() + "\n";
  return s;
}

int report_result(const Common& common, const Report& r) {
  emit(common, r.to_json(common.timing), summary(r));
  return r.ok() ? kPass : kFail;
}

std::size_t arity_of(const std::vector<Term>& terms) {
  std::size_t k = 0;
  for (const auto& t : terms) k = std::max(k, t.var_bound());
  return k;
}

std::vector<Term> parse_all(const std::vector<std::string>& texts, const TheorySpec& theory, std::size_t arity) {
  std::vector<Term> out;
  for (const auto& s : texts) out.push_back(parse_term(s, theory, arity));
  return out;
}

std::string join_terms(const std::vector<Term>& terms) {
  std::string s;
  for (const auto& t : terms) s += (s.empty() ? "" : ", ") + print_term(t);
  return s;
}

// Letters bound by the texts, for a default arity.
std::size_t inferred_arity(const std::vector<std::string>& texts, const TheorySpec& theory) {
  std::vector<Term> raw;
  for (const auto& s : texts) raw.push_back(parse_raw_term(s, theory, 26));
  return arity_of(raw);
}

json morphism_json(const TheoryMorphism& f) {
  json comps = json::array();
  for (const auto& c : f.components) comps.push_back(print_term(c));
  return {{"source", f.source}, {"target", f.target}, {"components", comps}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic theories, distributive laws and the monad/theory correspondence"};
  app.require_subcommand(1);
  Common common;
  try {
    common.samples = default_samples();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  auto add_common = [&](CLI::App* sub, bool sampled) {
    sub->add_flag("--json", common.json, "Print a JSON report");
    sub->add_flag("--timing", common.timing, "Include wall time in JSON reports");
    sub->add_option("-o,--output", common.output, "Write the output to this file");
    if (sampled) {
      sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
      sub->add_option("--samples", common.samples, "Sample count (default from LAWVERE_SAMPLES, else 500)");
    }
  };

  // compose
  std::string theory_name = "ring";
  std::vector<std::string> outer_texts, inner_texts;
  std::optional<std::size_t> arity_opt;
  auto* compose_cmd = app.add_subcommand("compose", "Compose morphisms of a theory: outer o inner");
  compose_cmd->add_option("--theory", theory_name, "Theory name")->capture_default_str();
  compose_cmd->add_option("--outer", outer_texts, "Component of the outer morphism, over one letter per inner component")
      ->required();
  compose_cmd->add_option("--inner", inner_texts, "Component of the inner morphism")->required();
  compose_cmd->add_option("--arity", arity_opt, "Arity of the inner morphism (default: letters used)");
  add_common(compose_cmd, false);

  // factorize
  std::vector<std::string> morphism_texts;
  auto* factorize_cmd = app.add_subcommand("factorize", "Canonical factorization in a two-layer composite theory");
  factorize_cmd->add_option("--theory", theory_name, "Composite theory name")->capture_default_str();
  factorize_cmd->add_option("--morphism", morphism_texts, "Component of the morphism (repeatable)")->required();
  factorize_cmd->add_option("--arity", arity_opt, "Source arity (default: letters used)");
  add_common(factorize_cmd, false);

  // check-law
  std::string law_name = "ring";
  auto* law_cmd = app.add_subcommand("check-law", "Sample the unit, multiplication and naturality diagrams of a law");
  law_cmd->add_option("--law", law_name, "Law name")->capture_default_str();
  add_common(law_cmd, true);

  // check-yb
  std::string series_name = "ring3";
  auto* yb_cmd = app.add_subcommand("check-yb", "Sample the Yang-Baxter hexagons of a series of laws");
  yb_cmd->add_option("--series", series_name, "Series name")->capture_default_str();
  add_common(yb_cmd, true);

  // check-fs
  std::size_t arity_bound = 2, size_bound = 5;
  std::string strict;
  auto* fs_cmd = app.add_subcommand("check-fs", "Factorizations over finite sets, or a strict factorization system");
  fs_cmd->add_option("--theory", theory_name, "Composite theory name")->capture_default_str();
  fs_cmd->add_option("--arity", arity_bound, "Largest arity")->capture_default_str();
  fs_cmd->add_option("--size", size_bound, "Largest component size in nodes")->capture_default_str();
  fs_cmd->add_option("--strict", strict, "Check a strict system instead: chain or iso")
      ->check(CLI::IsMember({"chain", "iso"}));
  add_common(fs_cmd, false);

  // check-coend
  std::string file;
  std::size_t triples = 20;
  auto* coend_cmd = app.add_subcommand("check-coend", "Profunctor composition laws over a category read from JSON");
  coend_cmd->add_option("--file", file, "Category JSON file")->required()->check(CLI::ExistingFile);
  coend_cmd->add_option("--triples", triples, "Random profunctor triples")->capture_default_str();
  add_common(coend_cmd, true);

  // roundtrip
  std::string monad_name = "pointed";
  std::size_t bound = 3, length = 2;
  std::optional<std::size_t> truncation;
  auto* rt_cmd = app.add_subcommand("roundtrip", "Rebuild a monad from its theory table and compare");
  rt_cmd->add_option("--monad", monad_name, "identity, pointed or free_monoid")->capture_default_str();
  rt_cmd->add_option("--bound", bound, "Largest |X|")->capture_default_str();
  rt_cmd->add_option("--length", length, "Word length cut for free_monoid")->capture_default_str();
  rt_cmd->add_option("--truncation", truncation, "Coend truncation (default: the bound)");
  add_common(rt_cmd, false);

  // correspond
  std::size_t corr_arity = 3;
  std::size_t corr_size = 5;
  auto* corr_cmd = app.add_subcommand("correspond", "Composite theory of a law against its composite monad");
  corr_cmd->add_option("--law", law_name, "Law name")->capture_default_str();
  corr_cmd->add_option("--size", corr_size, "Largest term size")->capture_default_str();
  corr_cmd->add_option("--arity", corr_arity, "Largest arity")->capture_default_str();
  add_common(corr_cmd, true);

  // enumerate
  std::size_t enum_arity = 2, enum_size = 5;
  auto* enum_cmd = app.add_subcommand("enumerate", "List normal forms of a theory");
  enum_cmd->add_option("--theory", theory_name, "Theory name")->capture_default_str();
  enum_cmd->add_option("--arity", enum_arity, "Number of variables")->capture_default_str();
  enum_cmd->add_option("--size", enum_size, "Largest size in nodes")->capture_default_str();
  add_common(enum_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*compose_cmd) {
      const auto theory = theory_by_name(theory_name);
      const std::size_t k = arity_opt.value_or(inferred_arity(inner_texts, theory));
      auto inner = make_morphism(theory, k, parse_all(inner_texts, theory, k));
      auto outer = make_morphism(theory, inner.target, parse_all(outer_texts, theory, inner.target));
      auto result = lawvere::compose(theory, outer, inner);
      json j = {{"schemaVersion", kSchemaVersion}, {"theory", theory.name}, {"inner", morphism_json(inner)},
                {"outer", morphism_json(outer)}, {"result", morphism_json(result)}};
      emit(common, j, join_terms(result.components) + "\n");
      return kPass;
    }
    if (*factorize_cmd) {
      const auto theory = theory_by_name(theory_name);
      const std::size_t k = arity_opt.value_or(inferred_arity(morphism_texts, theory));
      auto f = make_morphism(theory, k, parse_all(morphism_texts, theory, k));
      auto p = factorize(theory, f);
      json j = factorization_to_json(p);
      j["schemaVersion"] = kSchemaVersion;
      j["theory"] = theory.name;
      emit(common, j,
           "middle " + std::to_string(p.middle) + "\nleft   " + join_terms(p.left.components) + "\nright  " +
               join_terms(p.right.components) + "\n");
      return kPass;
    }
    if (*law_cmd) {
      auto law = law_by_name(law_name);
      Sampler s;
      s.samples = common.samples;
      s.seed = common.seed;
      auto check = check_law_axioms(law, s);
      json diagrams = json::array();
      std::string text;
      for (const auto& d : check.diagrams) {
        diagrams.push_back(d.to_json());
        text += d.diagram + ": " + (d.ok() ? "PASS" : "FAIL") + " (" + std::to_string(d.sample_count) + " samples)\n";
        if (!d.ok()) text += "  witness: " + d.failures.front().dump() + "\n";
      }
      json j = check.summary.to_json(common.timing);
      j["law"] = law.name;
      j["diagrams"] = diagrams;
      emit(common, j, text + summary(check.summary));
      return check.ok() ? kPass : kFail;
    }
    if (*yb_cmd) {
      auto series = series_by_name(series_name);
      Sampler s;
      s.samples = common.samples;
      s.seed = common.seed;
      return report_result(common, check_yang_baxter(series, s));
    }
    if (*fs_cmd) {
      if (strict == "chain") {
        auto c = categories::chain(3);
        std::vector<bool> in_l(c->arrow_count()), in_r(c->arrow_count());
        for (std::size_t i = 0; i < c->arrow_count(); ++i) {
          in_l[i] = c->is_identity(i) || c->arrow(i).name == "0<1";
          in_r[i] = c->is_identity(i) || c->arrow(i).name == "1<2";
        }
        return report_result(common, check_strict_fs(*c, in_l, in_r));
      }
      if (strict == "iso") {
        auto c = categories::iso_pair();
        std::vector<bool> all(c->arrow_count(), true);
        return report_result(common, check_strict_fs(*c, all, all));
      }
      return report_result(common, check_fs_over_F(theory_by_name(theory_name), arity_bound, size_bound));
    }
    if (*coend_cmd) {
      std::ifstream in(file);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw structural_error(std::string("malformed JSON in ") + file + ": " + e.what());
      }
      auto c = category_from_json(j);
      return report_result(common, check_composition_laws({c}, triples, common.seed));
    }
    if (*rt_cmd) {
      auto f = monad_by_name(monad_name, length);
      auto r = roundtrip_check(f, bound, truncation);
      return report_result(common, r);
    }
    if (*corr_cmd) {
      Sampler s;
      s.samples = common.samples;
      s.seed = common.seed;
      return report_result(common, composite_correspondence_check(law_by_name(law_name), corr_arity, corr_size, s));
    }
    if (*enum_cmd) {
      const auto theory = theory_by_name(theory_name);
      auto terms = enumerate_terms(theory, enum_arity, enum_size);
      json list = json::array();
      std::string text;
      for (const auto& t : terms) {
        list.push_back(print_term(t));
        text += print_term(t) + "\n";
      }
      json j = {{"schemaVersion", kSchemaVersion},
                {"theory", theory.name},
                {"arity", enum_arity},
                {"size", enum_size},
                {"count", terms.size()},
                {"terms", list}};
      emit(common, j, text);
      return kPass;
    }
  } catch (const structural_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
