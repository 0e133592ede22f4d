#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "cybmw/json_io.hpp"
#include "doctest.h"

using namespace cybmw;

namespace {

struct Run {
    int rc = -1;
    std::string out;
};

Run run(const std::string& args) {
    Run r;
    std::string cmd = std::string(CYBMW_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), got);
    int status = pclose(f);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Json json_of(const Run& r) { return Json::parse(r.out); }

}  // namespace

TEST_CASE("basis count and schema version") {
    auto r = run("basis --n 3 --k 2 --count");
    REQUIRE(r.rc == 0);
    auto j = json_of(r);
    CHECK(j["schemaVersion"] == kSchemaVersion);
    CHECK(j["count"] == 120);
}

TEST_CASE("verify passes on a rational point") {
    auto r = run("verify --n 2 --k 2");
    CHECK(r.rc == 0);
    for (const auto& c : json_of(r)["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("normalize, multiply and star") {
    auto a = run("normalize --n 2 --k 2 --word \"X1 e1\"");
    auto b = run("multiply --n 2 --k 2 --left X1 --right e1");
    REQUIRE(a.rc == 0);
    REQUIRE(b.rc == 0);
    CHECK(json_of(a)["element"] == json_of(b)["element"]);
    auto s = run("star --n 2 --k 2 --word \"Y X1\"");
    auto t = run("normalize --n 2 --k 2 --word \"X1 Y\"");
    CHECK(json_of(s)["element"] == json_of(t)["element"]);
}

TEST_CASE("trace of a crossing at the default point") {
    auto r = run("trace --n 2 --k 2 --word X1");
    REQUIRE(r.rc == 0);
    CHECK(json_of(r)["trace"] == "377/162");
}

TEST_CASE("Brauer ring is admissible") {
    auto r = run("admissible --k 3 --ring brauer");
    REQUIRE(r.rc == 0);
    CHECK(json_of(r)["admissible"] == true);
}

TEST_CASE("bad input exits with 2") {
    CHECK(run("trace --n 2 --k 2 --word X5").rc == 2);
    CHECK(run("basis --n 9 --k 2").rc == 2);
    CHECK(run("frobnicate").rc == 2);
    CHECK(run("normalize --n 2 --k 2 --word \"Q7\"").rc == 2);
}
