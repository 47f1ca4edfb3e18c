#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("meso_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

Run meso(const std::string& args, const std::string& env = {}) {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = env + " '" MESO_CLI_PATH "' " + args + " > '" + out.string() + "' 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out)};
}

}  // namespace

TEST(Cli, PatternsListing) {
  const auto r = meso("patterns --k 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\nindex,bits,admissible,label"), std::string::npos);
}

TEST(Cli, AnalyzeFourCycle) {
  const auto g = write("cycle.txt", "0 1\n1 2\n2 3\n3 0\n");
  const auto p = write("cycle.part", "0 0\n1 0\n2 1\n3 1\n");
  const auto b = write("comm.block", "1 -1\n-1 1\n");
  const auto r = meso("analyze --input " + g.string() + " --partition " + p.string() + " --block " + b.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("block_modularity,0"), std::string::npos) << r.out;
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(meso("analyze --input /nonexistent/file --partition /nonexistent/p").status, 2);
  const auto bad = write("bad.txt", "0 1\n1 x\n");
  const auto p = write("bad.part", "0\n0\n");
  EXPECT_EQ(meso("analyze --input " + bad.string() + " --partition " + p.string()).status, 2);
  EXPECT_EQ(meso("patterns --k 9").status, 2);
  EXPECT_EQ(meso("no-such-command").status, 2);
  const auto g = write("dir.txt", "0 1\n1 2\n");
  const auto q = write("dir.part", "0\n1\n1\n");
  EXPECT_EQ(meso("--directed --null er analyze --input " + g.string() + " --partition " + q.string()).status, 2);
}

TEST(Cli, SeededOutputIsByteIdentical) {
  const std::string args = "--seed 7 scan-cp --p-m 0.5 --step 0.5 --group-size 8 --reps 2";
  const auto a = meso(args);
  const auto b = meso(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("# seed: 7"), std::string::npos);
  const auto threaded = meso(args, "MESO_THREADS=3");
  EXPECT_EQ(threaded.status, 0);
  EXPECT_EQ(threaded.out, a.out);
  EXPECT_NE(meso("--seed 8 scan-cp --p-m 0.5 --step 0.5 --group-size 8 --reps 2").out, a.out);
}

TEST(Cli, SampleWritesFiles) {
  const auto g = write("sample_in.txt", "0 1\n1 2\n2 3\n3 0\n0 4\n4 5\n");
  const auto dir = scratch() / "samples";
  fs::remove_all(dir);
  const auto r = meso("--seed 3 sample --input " + g.string() + " --samples 3 --out-dir " + dir.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(fs::exists(dir / "manifest.csv"));
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".txt";
  EXPECT_EQ(files, 3u);
}

TEST(Cli, HeatmapFromGrid) {
  const auto grid = write("grid.csv", "y\\x,0.1,0.2\n0.5,-1,0\n1,0.5,1\n");
  const auto r = meso("heatmap --grid " + grid.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
  EXPECT_EQ(meso("heatmap --grid " + write("empty.csv", "").string()).status, 2);
}
