#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "support.hpp"

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(MACE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    const auto dir = testsupport::scratch_dir("cli").string();
    CHECK(run("") == 1);
    CHECK(run("bogus") == 1);
    CHECK(run("generate --model nonsense") == 1);
    CHECK(run("generate --model arfima --d 0.7 --length 2000 --out " + dir + "/x.csv") == 1);
    CHECK(run("--seed 3 generate --model fbm --hurst 0.7 --length 20000 --out " + dir + "/fbm.csv") == 0);
    CHECK(run("entropy --input " + dir + "/fbm.csv --windows 10,50 --out " + dir + "/curves.csv") == 0);
    CHECK(run("mdi --curves " + dir + "/curves.csv --out " + dir + "/mdi.csv") == 0);
    CHECK(run("ttest --curves " + dir + "/curves.csv --reference " + dir + "/curves.csv --set self --out " + dir +
              "/t.csv") == 0);
    CHECK(testsupport::slurp(dir + "/t.csv") == "M,set,p\n0,self,1\n");
    CHECK(run("horizons --input " + dir + "/fbm.csv --out " + dir + "/hz") == 2);
    CHECK(run("horizons --input " + dir + "/fbm.csv --lengths 5000,10000,20000 --scale 1 --out " + dir + "/hz") == 0);
    CHECK(std::filesystem::exists(dir + "/hz/horizon_03.csv"));
    CHECK(testsupport::slurp(dir + "/hz/horizon_spec.csv").rfind("M,N,N_M,t_S,t_S_star\n1,5000,5000,1.0000,1\n", 0) == 0);
    std::ofstream(dir + "/empty.csv").close();
    CHECK(run("horizons --ticks " + dir + "/empty.csv") == 2);
    CHECK(run("sweep --presets b2,gbm --scale 0.015625 --windows 10,40 --benchmark-ensemble 1 --out " + dir + "/sw") ==
          3);
    CHECK(std::filesystem::exists(dir + "/sw/manifest.json"));
    CHECK(run("sweep --presets gbm --scale 0.015625 --windows 10,40 --benchmark-ensemble 1 --out " + dir + "/sw2") == 0);
  }
}
