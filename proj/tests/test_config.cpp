#include "doctest.h"
#include "test_util.hpp"
#include "yieldctl/config.hpp"
#include "yieldctl/error.hpp"

using namespace yieldctl;

TEST_CASE("config parsing: keys, comments, lists") {
    ConfigFile cfg = ConfigFile::parse_text(
        "# a comment\n"
        "data.target = PassOrFail\n"
        "smote.k = 5\n"
        "gbdt.learning_rate = 0.1   # trailing comment\n"
        "ice.alphas = 0.05, 0.1, 0.2\n"
        "data.keep = A\n"
        "data.keep = B\n"
        "out.plots = true\n"
        "\n");

    CHECK(cfg.get_string("data.target", "") == "PassOrFail");
    CHECK(cfg.get_size("smote.k", 0) == 5);
    CHECK(cfg.get_double("gbdt.learning_rate", 0) == doctest::Approx(0.1));
    CHECK(cfg.get_double_list("ice.alphas") == std::vector<double>{0.05, 0.1, 0.2});
    CHECK(cfg.get_list("data.keep") == std::vector<std::string>{"A", "B"});
    CHECK(cfg.get_bool("out.plots", false));
    CHECK(cfg.get_bool("absent.key", true));
    CHECK(cfg.get_string("absent.key2", "fallback") == "fallback");
    CHECK(cfg.unread_keys().empty());
}

TEST_CASE("config parsing errors") {
    CHECK_THROWS_WITH_AS(ConfigFile::parse_text("just words\n"), doctest::Contains("key = value"),
                         Error);
    CHECK_THROWS_WITH_AS(ConfigFile::parse_text("= 3\n"), doctest::Contains("empty key"), Error);

    ConfigFile cfg = ConfigFile::parse_text("a.b = x\na.b = y\nnum = oops\nflag = maybe\n");
    CHECK_THROWS_WITH_AS(cfg.get_string("a.b", ""), doctest::Contains("more than once"), Error);
    CHECK_THROWS_AS(cfg.get_double("num", 0), Error);
    CHECK_THROWS_AS(cfg.get_u64("num", 0), Error);
    CHECK_THROWS_AS(cfg.get_bool("flag", false), Error);
}

TEST_CASE("unread keys are reported") {
    ConfigFile cfg = ConfigFile::parse_text("known = 1\nmystery.key = 2\n");
    CHECK(cfg.get_size("known", 0) == 1);
    CHECK(cfg.unread_keys() == std::vector<std::string>{"mystery.key"});
}

TEST_CASE("config files parse from disk") {
    testutil::TempDir dir("cfg");
    testutil::write_file(dir.file("c.conf"), "x.y = 4\n");
    ConfigFile cfg = ConfigFile::parse(dir.file("c.conf"));
    CHECK(cfg.get_size("x.y", 0) == 4);
    CHECK_THROWS_AS(ConfigFile::parse(dir.file("absent.conf")), Error);
}
