#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "plap/config.hpp"
#include "plap/errors.hpp"

using namespace plap;

static std::string kind_of(const Error& e) { return to_string(e.kind()); }

TEST_CASE("parse key = value with comments and blanks") {
    Config c = parse_config_text("# header\n"
                                 "p = 1.5\n"
                                 "\n"
                                 "n=257   # trailing comment\n"
                                 "domain = -1, 1\n"
                                 "reaction = power\n",
                                 "inline");
    CHECK(c.has("p"));
    CHECK(c.get_real("p") == doctest::Approx(1.5));
    CHECK(c.get_int("n") == 257);
    CHECK(c.get_string("domain") == "-1, 1");
    CHECK(c.get_string("reaction") == "power");
    CHECK(c.lines.at("n") == 4);
    CHECK_FALSE(c.has("missing"));
}

TEST_CASE("duplicate keys name both lines") {
    try {
        parse_config_text("p = 2\nq = 1\np = 3\n", "dup");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::config_error);
        std::string msg = e.what();
        CHECK(msg.find("p") != std::string::npos);
        CHECK(msg.find("1") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);
    }
}

TEST_CASE("malformed line is rejected with its number") {
    try {
        parse_config_text("p = 2\nnot a pair\n", "bad");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::config_error);
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("typed getters convert or name the key and expected type") {
    Config c = parse_config_text("p = abc\nn = 2.5\nm = 7\n", "types");
    CHECK(c.get_int("m") == 7);
    try {
        c.get_real("p");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::config_error);
        std::string msg = e.what();
        CHECK(msg.find("p") != std::string::npos);
        CHECK(msg.find("real") != std::string::npos);
    }
    try {
        c.get_int("n");
        CHECK(false);
    } catch (const Error& e) {
        std::string msg = e.what();
        CHECK(msg.find("n") != std::string::npos);
        CHECK(msg.find("integer") != std::string::npos);
    }
    CHECK_THROWS_AS(c.get_real("absent"), Error);
}

TEST_CASE("require_keys reports every missing key at once") {
    Config c = parse_config_text("p = 2\n", "req");
    CHECK_NOTHROW(require_keys(c, {"p"}));
    try {
        require_keys(c, {"p", "n", "T", "mT"});
        CHECK(false);
    } catch (const Error& e) {
        std::string msg = e.what();
        CHECK(msg.find("n") != std::string::npos);
        CHECK(msg.find("T") != std::string::npos);
        CHECK(msg.find("mT") != std::string::npos);
        CHECK(kind_of(e) == "config-error");
    }
}

TEST_CASE("restrict_keys rejects strangers by name and line") {
    Config c = parse_config_text("p = 2\nwhoops = 1\n", "res");
    try {
        restrict_keys(c, {"p", "n"});
        CHECK(false);
    } catch (const Error& e) {
        std::string msg = e.what();
        CHECK(msg.find("whoops") != std::string::npos);
        CHECK(msg.find("2") != std::string::npos);
    }
    CHECK_NOTHROW(restrict_keys(c, {"p", "whoops"}));
}

TEST_CASE("set overrides file values and marks line 0") {
    Config c = parse_config_text("p = 2\n", "ovr");
    c.set("p", "3");
    c.set("extra", "x");
    CHECK(c.get_real("p") == doctest::Approx(3.0));
    CHECK(c.lines.at("p") == 0);
    CHECK(c.get_string("extra") == "x");
}

TEST_CASE("missing file errors cleanly") {
    CHECK_THROWS_AS(parse_config("/nonexistent/path/plap.conf"), Error);
}
