#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("gpmap_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run gpmap(const std::string& args) {
  const fs::path out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
  const std::string cmd = "cd \"" + workdir().string() + "\" && \"" GPMAP_CLI "\" " + args + " > \"" +
                          out.string() + "\" 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("iterate") {
  const Run ok = gpmap("iterate --map belykh-periodic --lambda 0.8 --a 0.6 --n 2000 --csv orbit.csv --svg p.svg");
  CHECK(ok.code == 0);
  const std::string csv = slurp(workdir() / "orbit.csv");
  CHECK(csv.rfind("index,x,y,lift,branch,hit\n", 0) == 0);
  CHECK(count_lines(csv) == 2001);
  CHECK(slurp(workdir() / "p.svg").find("</svg>") != std::string::npos);

  const Run missing = gpmap("iterate --map lozi --lambda 0.2");
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--a") != std::string::npos);

  CHECK(gpmap("iterate --map lozi --lambda 0.2 --a 1.5 --bogus 1").code == 2);
  CHECK(gpmap("iterate --map lozi --lambda 1.5 --a 1.5").code == 2);
  CHECK(gpmap("iterate --map lozi --lambda 0.2 --a 1.5 --x0 40 --csv o.csv").code == 3);
  CHECK(gpmap("iterate --map lozi --lambda 0.2 --a 1.5 --n 500 --lyapunov --summary s.json --csv o.csv").code == 0);
  const auto summary = nlohmann::json::parse(slurp(workdir() / "s.json"));
  CHECK(summary["h1"].get<double>() > 0.0);
}

TEST_CASE("iterate reads a map file and config file") {
  {
    std::ofstream f(workdir() / "lozi.map");
    f << "variant = lozi\nlambda = 0.2\na = 1.5\n";
  }
  CHECK(gpmap("iterate --map-file lozi.map --n 100 --csv a.csv").code == 0);
  CHECK(gpmap("iterate --map-file lozi.map --a 1.6 --n 100 --csv b.csv").code == 0);
  CHECK(slurp(workdir() / "a.csv") != slurp(workdir() / "b.csv"));
  {
    std::ofstream f(workdir() / "bad.map");
    f << "variant = lozi\nlambda = 0.2\na = 1.5\nsurprise = 3\n";
  }
  CHECK(gpmap("iterate --map-file bad.map --n 100 --csv c.csv").code == 2);
  {
    std::ofstream f(workdir() / "run.ini");
    f << "seed = 5\n[iterate]\nmap = lozi\nlambda = 0.2\na = 1.5\nn = 50\ncsv = d.csv\n";
  }
  CHECK(gpmap("--config run.ini iterate").code == 0);
  CHECK(count_lines(slurp(workdir() / "d.csv")) == 51);
  {
    std::ofstream f(workdir() / "extra.ini");
    f << "[iterate]\nmap = lozi\nunknown_key = 1\n";
  }
  CHECK(gpmap("--config extra.ini iterate").code == 2);
}

TEST_CASE("certify") {
  const Run b = gpmap("certify --theorem belykh --lambda 0.5 --a 0.5 --interior-samples 100 --steps 100");
  CHECK(b.code == 0);
  const auto jb = nlohmann::json::parse(b.out);
  CHECK(jb["verdict"] == "holds");
  CHECK(jb["zero_margin"] == true);
  CHECK(jb["witnesses"]["fM1_to_M2"].get<double>() <= 1e-12);

  const Run l = gpmap("certify --theorem lozi --lambda 0.2 --a 1.95");
  CHECK(l.code == 1);
  const auto jl = nlohmann::json::parse(l.out);
  CHECK(jl["verdict"] == "fails");
  CHECK(jl["witnesses"]["H"].get<double>() == doctest::Approx(-0.31337).epsilon(1e-4));

  const Run h = gpmap("certify --theorem hybrid --l 0");
  CHECK(h.code == 1);
  CHECK(nlohmann::json::parse(h.out)["verdict"] == "inapplicable");

  CHECK(gpmap("certify --theorem nonsense").code == 2);
  CHECK(gpmap("certify").code == 2);
  CHECK(gpmap("certify --theorem annulus --starts 50 --annulus-steps 200").code == 0);
  CHECK(gpmap("certify --theorem cones --lambda 0.3 --cone-samples 200").code == 0);
  CHECK(gpmap("certify --theorem hyperbolicity --map sine --lambda 0.5").code == 1);
}

TEST_CASE("scan") {
  const Run ok = gpmap("scan --resolution 40 --csv grid.csv --svg grid.svg --boundaries bounds.json");
  CHECK(ok.code == 0);
  const std::string csv = slurp(workdir() / "grid.csv");
  CHECK(csv.rfind("cell,i,j,lambda,a,label,witness,flags\n", 0) == 0);
  CHECK(count_lines(csv) == 1601);
  CHECK(csv.find(",attractor,") != std::string::npos);
  const auto bounds = nlohmann::json::parse(slurp(workdir() / "bounds.json"));
  CHECK(bounds.size() >= 2);
  CHECK(slurp(workdir() / "grid.svg").find("stroke-dasharray") != std::string::npos);

  const Run bel = gpmap("scan --classifier belykh --resolution 30 --csv b.csv --boundaries bb.json");
  CHECK(bel.code == 0);
  const auto bb = nlohmann::json::parse(slurp(workdir() / "bb.json"));
  REQUIRE(bb.size() == 1);
  CHECK(bb[0]["scalar"] == "1-lambda-a");

  CHECK(gpmap("scan --resolution 1").code == 2);
  CHECK(gpmap("scan --classifier nope").code == 2);
}

TEST_CASE("scan is independent of GPMAP_THREADS") {
  CHECK(gpmap("scan --resolution 50 --csv t1.csv --no-boundaries --threads 1").code == 0);
  const Run t = gpmap("scan --resolution 50 --csv t8.csv --no-boundaries");
  CHECK(t.code == 0);
  ::setenv("GPMAP_THREADS", "3", 1);
  CHECK(gpmap("scan --resolution 50 --csv t3.csv --no-boundaries").code == 0);
  ::unsetenv("GPMAP_THREADS");
  CHECK(slurp(workdir() / "t1.csv") == slurp(workdir() / "t8.csv"));
  CHECK(slurp(workdir() / "t1.csv") == slurp(workdir() / "t3.csv"));
}

TEST_CASE("homoclinic") {
  const Run r = gpmap("homoclinic --lambda 0.2 --svg h.svg --trace-csv h.csv");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["a"].get<double>() >= 1.88);
  CHECK(j["a"].get<double>() <= 1.91);
  CHECK(slurp(workdir() / "h.csv").rfind("piece,vertex,x,y,branch\n", 0) == 0);
  CHECK(gpmap("homoclinic --lambda 0.2 --a-lo 1.3 --a-hi 1.5").code == 1);
}

TEST_CASE("eig") {
  const Run r = gpmap("eig --d 0.6 --lambda 0.8");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["mu1"].get<double>() == doctest::Approx(2.0));
  CHECK(j["alpha2"].get<double>() == doctest::Approx(-1.2));
  CHECK(j["class"] == "positive-saddle");
  const Run f = gpmap("eig --map lozi --lambda 0.2 --a 1.905");
  CHECK(f.code == 0);
  CHECK(nlohmann::json::parse(f.out)["fixed_points"].size() == 2);
  CHECK(gpmap("eig --d 0.6").code == 2);
}

TEST_CASE("pll") {
  const Run r = gpmap("pll --starts 4 --T 20 --csv traj.csv --v-csv v.csv --svg pll.svg");
  CHECK(r.code == 0);
  std::istringstream v(slurp(workdir() / "v.csv"));
  std::string line;
  std::getline(v, line);
  CHECK(line == "start,t,V");
  long prev_start = -1;
  double prev_v = 0.0;
  std::size_t rows = 0;
  while (std::getline(v, line)) {
    const long start = std::stol(line.substr(0, line.find(',')));
    const double V = std::strtod(line.substr(line.rfind(',') + 1).c_str(), nullptr);
    if (start == prev_start) CHECK(V <= prev_v + 1e-10);
    prev_start = start;
    prev_v = V;
    ++rows;
  }
  CHECK(rows > 100);
  CHECK(gpmap("pll --h-step 0").code == 2);
  CHECK(gpmap("pll --h-step -1").code == 2);
}

TEST_CASE("identical seeds give byte-identical outputs") {
  const std::string cmds[] = {
      "--seed 9 iterate --map lozi --lambda 0.2 --a 1.5 --n 1000 --csv -",
      "--seed 9 certify --theorem lozi --interior-samples 50 --steps 50",
      "--seed 9 pll --starts 2 --T 3 --csv -",
  };
  for (const auto& c : cmds) {
    const Run a = gpmap(c), b = gpmap(c);
    CHECK(a.code == b.code);
    CHECK_FALSE(a.out.empty());
    CHECK(a.out == b.out);
  }
  CHECK(gpmap("--seed 9 iterate --map lozi --lambda 0.2 --a 1.5 --n 10 --csv -").out !=
        gpmap("--seed 10 iterate --map lozi --lambda 0.2 --a 1.5 --n 10 --csv -").out);
}
