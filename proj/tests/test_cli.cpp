#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kBin = DRONEFILM_BIN;
const fs::path kData = DRONEFILM_DATA;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("dronefilm_cli_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Exit status of the binary; stdout goes to out.txt, stderr to err.txt.
  int cli(const std::string& args) {
    const std::string cmd = "\"" + kBin + "\" " + args + " > \"" + (dir_ / "out.txt").string() + "\" 2> \"" +
                            (dir_ / "err.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string out() const { return slurp(dir_ / "out.txt"); }
  std::string err() const { return slurp(dir_ / "err.txt"); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

int line_count(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_F(Cli, GenRunRender) {
  ASSERT_EQ(cli("gen --seed 4 --size 12 --density 0.1 --actors 2 --agents 2 --length 10 --out " + path("s.json")), 0)
      << err();
  EXPECT_NE(out().find("seed=4"), std::string::npos);
  ASSERT_EQ(cli("run " + path("s.json") + " --trace-out " + path("t.ndjson") + " --metrics-out " + path("m.json")),
            0)
      << err();
  EXPECT_EQ(line_count(out()), 2);
  EXPECT_NE(slurp(path("m.json")).find("completion_time_s"), std::string::npos);
  ASSERT_EQ(cli("render " + path("t.ndjson") + " " + path("frames")), 0) << err();
  int frames = 0;
  for (const auto& e : fs::directory_iterator(path("frames"))) frames += e.path().extension() == ".svg";
  EXPECT_EQ(frames, 10);
  EXPECT_TRUE(fs::exists(path("frames/frame_0000.svg")));
  EXPECT_TRUE(fs::exists(path("frames/frame_0009.svg")));
}

TEST_F(Cli, GenIsByteIdentical) {
  ASSERT_EQ(cli("gen --seed 9 --density 0.15 --actors 3 --agents 3 --out " + path("a.json")), 0);
  ASSERT_EQ(cli("gen --seed 9 --density 0.15 --actors 3 --agents 3 --out " + path("b.json")), 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  ASSERT_EQ(cli("gen --seed 10 --density 0.15 --actors 3 --agents 3 --out " + path("c.json")), 0);
  EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
}

TEST_F(Cli, RunTraceIsReproducible) {
  ASSERT_EQ(cli("gen --seed 2 --density 0.1 --actors 3 --agents 3 --length 15 --out " + path("s.json")), 0);
  ASSERT_EQ(cli("run " + path("s.json") + " --trace-out " + path("a.ndjson")), 0);
  ASSERT_EQ(cli("run " + path("s.json") + " --trace-out " + path("b.ndjson")), 0);
  EXPECT_EQ(slurp(path("a.ndjson")), slurp(path("b.ndjson")));
}

TEST_F(Cli, BenchRows) {
  ASSERT_EQ(cli("bench --agents 2 --actors 2 --densities 0.1 --seeds 3 --length 8 --no-timing"), 0) << err();
  const std::string csv = out();
  EXPECT_EQ(line_count(csv), 1 + 3 + 1);
  EXPECT_EQ(csv.rfind("agents,actors,initial_viewpoints,", 0), 0u);

  ASSERT_EQ(cli("bench --agents 2 --actors 2 --densities 0.1 --seeds 2 --length 8 --markdown"), 0);
  EXPECT_NE(out().find("| Agents | Actors |"), std::string::npos);
  EXPECT_NE(out().find("mean |"), std::string::npos);
}

TEST_F(Cli, ErrorsExitNonZero) {
  EXPECT_EQ(cli("bench --agents 2 --actors 2"), 1);
  EXPECT_EQ(cli("frobnicate"), 1);
  EXPECT_EQ(cli(""), 1);
  EXPECT_EQ(cli("run " + path("missing.json")), 3);

  {
    std::ofstream(path("bad.json")) << "{\"seed\": 1}";
  }
  EXPECT_EQ(cli("run " + path("bad.json")), 2);
  EXPECT_NE(err().find("validation"), std::string::npos);

  {
    std::ofstream(path("bad.ndjson")) << "{\"t\": 0, \"kind\": \"move\", \"payload\": {}}\nnot json\n";
  }
  EXPECT_NE(cli("render " + path("bad.ndjson") + " " + path("frames")), 0);
  EXPECT_NE(err().find("record 2"), std::string::npos);

  EXPECT_EQ(cli("gen --size 2 --density 0.5 --actors 3 --agents 3 --out " + path("x.json")), 2);
}

TEST_F(Cli, RenderMatchesGolden) {
  ASSERT_EQ(cli("run " + (kData / "tiny_scenario.json").string() + " --trace-out " + path("t.ndjson")), 0) << err();
  ASSERT_EQ(cli("render " + path("t.ndjson") + " " + path("frames")), 0) << err();
  EXPECT_EQ(slurp(path("frames/frame_0002.svg")), slurp(kData / "tiny_frame_0002.svg"));
}
