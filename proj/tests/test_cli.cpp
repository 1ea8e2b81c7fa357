#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + LOOPALG_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  Result r;
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("degrees") {
  auto a2 = parse(run("degrees A2"));
  CHECK(a2["degrees"] == nlohmann::json({2, 3}));
  CHECK(a2["coxeter_number"] == 3);
  CHECK(a2["kac_labels"] == nlohmann::json({1, 1, 1}));
  auto g2 = parse(run("degrees G2"));
  CHECK(g2["degrees"] == nlohmann::json({2, 6}));
  CHECK(g2["coxeter_number"] == 6);
  CHECK(g2["kac_labels"] == nlohmann::json({1, 2, 3}));
  CHECK(run("degrees E8").code == 2);
  CHECK(run("degrees Q3").code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("verify no-such-thing --type A1").code == 2);
  CHECK(run("verify size-of-image --type A1 --kac 1,1,1").code == 2);
  CHECK(run("verify size-of-image --type B3").code == 2);
  CHECK(run("verify surjectivity --type A3 --kac 1,1,0,0").code == 2);
  CHECK(run("verify size-of-image --type A1 --kac 1,1 --n 2 --samples 100 --seed 7").code == 0);
  for (const char* sub : {"degrees", "kac", "grading", "hitchin-image", "verify", "fg",
                          "oper-space", "hitchin-base"}) {
    Result help = run(std::string(sub) + " --help");
    CHECK(help.code == 0);
    CHECK(help.out.find("Usage") != std::string::npos);
  }
}

TEST_CASE("verify reports") {
  auto r = parse(run("verify global-oper --type A2"));
  CHECK(r["oper_space_dimension"] == 1);
  CHECK(r["status"] == "pass");
  auto s = parse(run("verify surjectivity --type C2 --kac 1,0,0"));
  CHECK(s["status"] == "pass");
  CHECK(s["m"] == 1);
}

TEST_CASE("fg") {
  auto tame = parse(run("fg A1 0"));
  CHECK(tame["slope_certificate"].is_null());
  CHECK(tame["residue_regular_singular"] == true);
  auto neg = parse(run("fg A2 -2"));
  CHECK(neg["a"] == "-2");
  auto g2 = parse(run("fg G2 2/3"));
  CHECK(g2["dual_type"] == "G2t");
  CHECK(g2["a"] == "2/3");
  CHECK(g2["slope_certificate"]["regular_semisimple"] == true);
  CHECK(run("fg A1 x/y").code == 2);
}

TEST_CASE("table format and output file") {
  auto path = std::filesystem::temp_directory_path() / "loopalg_cli_test.txt";
  Result r = run("--format table -o " + path.string() + " hitchin-base A3");
  CHECK(r.code == 0);
  CHECK(r.out.find("total: 1\n") != std::string::npos);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == r.out);
  std::filesystem::remove(path);
}

TEST_CASE("golden comparison detects changes") {
  auto dir = std::filesystem::temp_directory_path() / "loopalg_golden_test";
  std::filesystem::create_directories(dir);
  const std::string env = "LOOPALG_GOLDEN_DIR=" + dir.string();
  CHECK(run("degrees A3", env).code == 2);
  CHECK(run("degrees A3", env + " LOOPALG_GOLDEN_UPDATE=1").code == 0);
  CHECK(run("degrees A3", env).code == 0);
  std::ofstream(dir / "degrees_A3.json") << "{}\n";
  CHECK(run("degrees A3", env).code == 1);
  std::filesystem::remove_all(dir);
}
