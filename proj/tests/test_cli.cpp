#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <sys/wait.h>

#include "mldtw/cli.hpp"
#include "mldtw/datasets.hpp"
#include "mldtw/pipeline.hpp"
#include "oracles.hpp"

using namespace mldtw;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "mldtw");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t count_blocks(const std::string& text) {
    std::size_t blocks = 0;
    bool in_block = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) in_block = false;
        else if (!in_block) {
            in_block = true;
            ++blocks;
        }
    }
    return blocks;
}

}  // namespace

TEST_CASE("gen-synth") {
    const auto dir = oracle::scratch_dir("cli_gen");
    const std::string s = (dir / "s.csv").string();
    const std::string t = (dir / "t.csv").string();
    CHECK(cli({"gen-synth", "--count", "100", "--length", "200", "--noise", "0.075", "--seed", "7", "--out", s}).code == 0);
    CHECK(count_blocks(slurp(s)) == 100);
    CHECK(cli({"gen-synth", "--count", "100", "--length", "200", "--noise", "0.075", "--seed", "7", "--out", t}).code == 0);
    CHECK(slurp(s) == slurp(t));

    const Run bad = cli({"gen-synth", "--count", "3", "--noise", "-1", "--out", s});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("--noise") != std::string::npos);
    CHECK(cli({"gen-synth", "--count", "0", "--out", s}).code == 2);
    CHECK(cli({"gen-synth", "--count", "3"}).code == 2);
    CHECK(cli({"gen-synth", "--count", "3", "--out", (dir / "no" / "such" / "dir.csv").string()}).code == 1);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("label, train, compare and bench") {
    const auto dir = oracle::scratch_dir("cli_flow");
    const std::string corpus = (dir / "c.csv").string();
    const std::string three = (dir / "three.csv").string();
    const std::string rows = (dir / "rows.csv").string();
    const std::string model = (dir / "m.bin").string();
    const std::string hist = (dir / "h.csv").string();
    REQUIRE(cli({"gen-synth", "--count", "30", "--length", "60", "--seed", "1", "--out", corpus}).code == 0);
    REQUIRE(cli({"gen-synth", "--count", "3", "--length", "60", "--seed", "2", "--out", three}).code == 0);

    SUBCASE("label") {
        const std::string r1 = (dir / "r1.csv").string();
        const std::string r2 = (dir / "r2.csv").string();
        CHECK(cli({"label", "--in", three, "--out", r1, "--prefix", "10"}).code == 0);
        CHECK(cli({"label", "--in", three, "--out", r2, "--prefix", "10"}).code == 0);
        CHECK(read_training_csv(r1).size() == 6);
        CHECK(slurp(r1) == slurp(r2));
        CHECK(cli({"label", "--in", (dir / "missing.csv").string(), "--out", r1}).code == 2);
        CHECK(cli({"label", "--in", three, "--out", r1, "--prefix", "0"}).code == 2);
    }

    SUBCASE("train and use the model") {
        REQUIRE(cli({"label", "--in", corpus, "--out", rows, "--prefix", "10"}).code == 0);
        CHECK(cli({"train", "--in", rows, "--out-model", model, "--hidden", "0", "--prefix", "10"}).code == 2);
        const Run tr = cli({"train", "--in", rows, "--out-model", model, "--history", hist, "--hidden", "16", "--epochs",
                            "8", "--prefix", "10", "--seed", "3"});
        REQUIRE(tr.code == 0);
        const WaypointModelSet set = load_model_set(model);
        CHECK(set.features.prefix_a == 10);
        CHECK(decode_model_set(encode_model_set(set)).models[0].net.input_dim() == 20);
        const std::string h = slurp(hist);
        CHECK(h.rfind("model,epoch,train_loss,train_accuracy,val_loss,val_accuracy\n", 0) == 0);
        CHECK(h.find("\n4,1,") != std::string::npos);

        for (const char* variant : {"full", "band"}) {
            const Run same = cli({"compare", "--a", corpus, "--b", corpus, "--a-index", "4", "--b-index", "4",
                                  "--variant", variant});
            CHECK(same.code == 0);
            CHECK(same.out.find("\ndistance: 0\n") != std::string::npos);
            CHECK(same.out.find("error: 0.0000%") != std::string::npos);
        }
        // The learned region only yields 0 when it covers the diagonal, which
        // this small model does not promise; the run itself must succeed.
        const Run ml = cli({"compare", "--a", corpus, "--b", corpus, "--a-index", "4", "--b-index", "4", "--variant",
                            "ml", "--model", model});
        CHECK(ml.code == 0);
        CHECK(ml.out.find("waypoints: ") != std::string::npos);
        CHECK(cli({"compare", "--a", corpus, "--b", corpus, "--variant", "ml"}).code == 2);
        CHECK(cli({"compare", "--a", corpus, "--b", corpus, "--a-index", "99"}).code == 2);

        const std::string pgm = (dir / "h.pgm").string();
        CHECK(cli({"compare", "--a", corpus, "--b", three, "--variant", "band", "--radius", "4", "--heatmap", pgm}).code ==
              0);
        CHECK(slurp(pgm).rfind("P5\n61 61\n255\n", 0) == 0);

        const std::string json = (dir / "s.json").string();
        const std::string csv = (dir / "t.csv").string();
        const Run b = cli({"bench", "--corpus", corpus, "--trials", "20", "--model", model, "--json", json, "--csv", csv});
        CHECK(b.code == 0);
        CHECK(b.out.find("ml") != std::string::npos);
        CHECK(slurp(json).find("\"budget_fair\"") != std::string::npos);
        CHECK(cli({"bench", "--corpus", corpus, "--trials", "0"}).code == 2);
        CHECK(cli({"bench", "--corpus", corpus, "--trials", "5", "--variants", "band,fast"}).code == 2);
        CHECK(cli({"bench", "--corpus", corpus, "--trials", "5", "--variants", "ml"}).code == 2);
        CHECK(cli({"bench", "--corpus", corpus, "--trials", "5000", "--variants", "band"}).code == 2);
        std::ofstream(dir / "broken.bin") << "MLDTWST1 junk";
        CHECK(cli({"bench", "--corpus", corpus, "--trials", "5", "--model", (dir / "broken.bin").string()}).code == 1);
    }
}

TEST_CASE("installed binary reports the same exit codes") {
    const auto dir = oracle::scratch_dir("cli_binary");
    const std::string exe = MLDTW_CLI_PATH;
    auto status = [](const std::string& cmd) {
        const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status(exe + " gen-synth --count 3 --length 20 --out " + (dir / "s.csv").string()) == 0);
    CHECK(status(exe + " gen-synth --count 3 --noise -1 --out " + (dir / "s.csv").string()) == 2);
    CHECK(status(exe + " gen-synth --count 3 --out " + (dir / "x" / "y" / "s.csv").string()) == 1);
    CHECK(status(exe + " --simd scalar compare --a " + (dir / "s.csv").string() + " --b " + (dir / "s.csv").string()) == 0);
}
