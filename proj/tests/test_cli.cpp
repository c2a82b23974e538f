#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "cli_harness.hpp"

using harness::data;
using harness::run_cli;

TEST_CASE("golden snapshots") {
    // KENTROPY_UPDATE_GOLDEN=1 rewrites the snapshots instead of comparing.
    const bool update = std::getenv("KENTROPY_UPDATE_GOLDEN") != nullptr;
    for (const auto& c : harness::golden_cases()) {
        CAPTURE(c.name);
        const auto r = run_cli(c.args);
        CHECK(r.code == 0);
        CHECK(r.err.empty());
        if (update) {
            std::ofstream(harness::golden_path(c), std::ios::binary) << r.out;
            continue;
        }
        CHECK(r.out == harness::read_file(harness::golden_path(c)));
    }
}

TEST_CASE("repeated runs are byte-identical") {
    for (const auto& c : harness::golden_cases()) {
        CAPTURE(c.name);
        CHECK(run_cli(c.args).out == run_cli(c.args).out);
    }
}

TEST_CASE("paper values at default precision") {
    auto r = run_cli({"measure", "--rankings", data("example2.rk")});
    CHECK(r.out.find("0.6348") != std::string::npos);
    CHECK(r.out.find("0.5101") != std::string::npos);
    CHECK(r.out.find("0.7909") != std::string::npos);

    r = run_cli({"entropy", "--rankings", data("example2.rk")});
    CHECK(r.out.find("1.3652") != std::string::npos);
    CHECK(r.out.find("1.4899") != std::string::npos);
    CHECK(r.out.find("1.2091") != std::string::npos);
    CHECK(r.out.find("lowest entropy: Expert3") != std::string::npos);

    r = run_cli({"additivity", "pair", "--n", "3", "--k", "0.53503", "--k", "1.0"});
    CHECK(r.out.find("1.6667") != std::string::npos);
    CHECK(r.out.find("INFEASIBLE") != std::string::npos);

    r = run_cli({"dynamics", "--kind", "ignorance", "--u0", "5", "--u1", "25", "--at-u", "7"});
    CHECK(r.out.find("0.2091") != std::string::npos);
}

TEST_CASE("precision flag") {
    const auto r = run_cli({"measure", "--partitions", data("eggs.csv"), "--rater", "John", "--precision", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.63478761") != std::string::npos);
    CHECK(run_cli({"measure", "--partitions", data("eggs.csv"), "--precision", "40"}).code == 2);
}

TEST_CASE("input errors exit 1 without partial output") {
    auto r = run_cli({"measure", "--rankings", data("empty.rk")});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("no records") != std::string::npos);

    r = run_cli({"measure", "--rankings", data("does-not-exist.rk")});
    CHECK(r.code == 1);
    CHECK(r.out.empty());

    r = run_cli({"measure", "--partitions", data("eggs.csv"), "--rater", "Jill"});
    CHECK(r.code == 1);

    r = run_cli({"dynamics", "--kind", "knowledge", "--u0", "5", "--u1", "25"});
    CHECK(r.code == 1);
    CHECK(r.err.find("U(K=1) < U(K=0)") != std::string::npos);

    r = run_cli({"dynamics", "--u0", "25", "--u1", "5", "--at-u", "9", "--at-u", "30"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());

    r = run_cli({"additivity", "decompose", "--classes", "x1, x2 ~ x3, x4", "--block", "x1", "--block", "x2,x3,x4"});
    CHECK(r.code == 1);

    r = run_cli({"additivity", "decompose", "--classes", "x1, x2 ~ x3, x4", "--block", "x1,x2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("do not cover") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"measure"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"measure", "--rankings", data("example2.rk"), "--partitions", data("eggs.csv")}).code == 2);
    CHECK(run_cli({"measure", "--rankings", data("example2.rk"), "--rater", "x"}).code == 2);
    CHECK(run_cli({"measure", "--rankings", data("example2.rk"), "--format", "xml"}).code == 2);
    CHECK(run_cli({"additivity"}).code == 2);
    CHECK(run_cli({"additivity", "pair", "--n", "3", "--k", "0.5"}).code == 2);
    CHECK(run_cli({"additivity", "pair", "--n", "3", "--k", "0.5", "--k", "1.5"}).code == 2);
    CHECK(run_cli({"additivity", "decompose", "--block", "x1,x2"}).code == 2);
    CHECK(run_cli({"dynamics", "--u0", "25"}).code == 2);
    CHECK(run_cli({"dynamics", "--kind", "wisdom", "--u0", "25", "--u1", "5"}).code == 2);
}

TEST_CASE("help exits 0") {
    const auto r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("measure") != std::string::npos);
}

TEST_CASE("decompose from a measurement table") {
    const auto r = run_cli({"additivity", "decompose", "--partitions", data("eggs.csv"), "--rater", "John", "--block",
                            "egg1,egg2,egg3", "--block", "egg4,egg5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("partition: egg1, egg2 ~ egg3, egg4 ~ egg5") != std::string::npos);
}
