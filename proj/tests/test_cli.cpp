#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "lawvere/correspondence.hpp"
#include "lawvere/registry.hpp"

using namespace lawvere;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string command = env + " " LAWVERE_CLI " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("registry: names resolve") {
  for (const auto& name : theory_names()) CHECK(theory_by_name(name).name == name);
  for (const auto& name : law_names()) CHECK(law_by_name(name).name == name);
  for (const auto& name : series_names()) CHECK_NOTHROW(series_by_name(name));
  for (const auto& name : monad_names()) CHECK(monad_by_name(name).name == name);
  CHECK_THROWS_AS(theory_by_name("field"), structural_error);
  CHECK_THROWS_AS(law_by_name("field"), structural_error);
  CHECK_THROWS_AS(monad_by_name("list"), structural_error);
}

TEST_CASE("reports: identical requests give identical JSON") {
  Sampler s;
  s.samples = 60;
  s.seed = 5;
  auto a = composite_correspondence_check(laws::pointed_semigroup(), 2, 5, s).to_json();
  auto b = composite_correspondence_check(laws::pointed_semigroup(), 2, 5, s).to_json();
  CHECK(a.dump() == b.dump());
  CHECK(a["schemaVersion"] == kSchemaVersion);
  CHECK(a["seed"] == 5);
  CHECK_FALSE(a.contains("wallTimeMs"));
  CHECK(composite_correspondence_check(laws::pointed_semigroup(), 2, 5, s).to_json(true).contains("wallTimeMs"));
}

TEST_CASE("cli: factorize ab+c") {
  auto r = run("factorize --theory ring --morphism \"ab+c\" --json");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["middle"] == 2);
  CHECK(j["left"] == nlohmann::json{"ab", "c"});
  CHECK(j["right"] == nlohmann::json{"a+b"});
}

TEST_CASE("cli: compose") {
  auto r = run("compose --theory monoid_composite --inner abc --inner ab^2c^2 --outer a^2b");
  CHECK(r.status == 0);
  CHECK(r.out == "abcabcab^2c^2\n");
}

TEST_CASE("cli: exit codes") {
  CHECK(run("check-law --law ring --samples 0").status == 0);
  CHECK(run("check-law --law mutant_ring --samples 100").status == 1);
  CHECK(run("check-fs --strict iso").status == 1);
  CHECK(run("check-fs --strict chain").status == 0);
  CHECK(run("enumerate --theory field").status == 2);
  CHECK(run("factorize --theory ring --morphism \"a+)\"").status == 2);
  CHECK(run("factorize --theory monoid --morphism ab").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("roundtrip --bound x").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("cli: sampled checks are deterministic and honour the sample default") {
  auto a = run("check-yb --series ring3 --samples 300 --seed 7 --json");
  auto b = run("check-yb --series ring3 --samples 300 --seed 7 --json");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["seed"] == 7);
  CHECK(j["failures"].empty());
  auto env = run("check-law --law ring --json", "LAWVERE_SAMPLES=20");
  CHECK(nlohmann::json::parse(env.out)["sampleCount"] == 100);
  CHECK(run("check-law --law ring", "LAWVERE_SAMPLES=many").status == 2);
}

TEST_CASE("cli: coend file, round trip and correspondence") {
  auto coend = run("check-coend --file " LAWVERE_TEST_DATA "/chain3.json --json");
  CHECK(coend.status == 0);
  CHECK(nlohmann::json::parse(coend.out)["failures"].empty());
  CHECK(run("check-coend --file " LAWVERE_TEST_DATA "/missing.json").status == 2);
  auto rt = run("roundtrip --monad pointed --bound 3 --json");
  CHECK(rt.status == 0);
  auto j = nlohmann::json::parse(rt.out);
  CHECK(j["bounds"]["truncation"] == 3);
  CHECK(j["stability"]["x=3"] == true);
  CHECK(run("correspond --law ring --size 5 --samples 50").status == 0);
  auto listed = nlohmann::json::parse(run("enumerate --theory monoid --arity 2 --size 3 --json").out);
  CHECK(listed["count"] == 7);
}
