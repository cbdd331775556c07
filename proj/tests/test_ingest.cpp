#include <doctest.h>

#include <string>
#include <vector>

#include "boxcox/error.hpp"
#include "boxcox/ingest.hpp"

using namespace boxcox;
using io::ColumnSelector;
using io::parse_column;

namespace {

std::string message_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ingestion);
        return e.what();
    }
    FAIL("expected an ingestion error");
    return {};
}

}  // namespace

TEST_CASE("single named column") {
    CHECK(parse_column("x\n1\n2\n3", ColumnSelector::parse("x")) == std::vector<double>{1, 2, 3});
    CHECK(parse_column("x\n1\n2\n3\n", ColumnSelector{}) == std::vector<double>{1, 2, 3});
}

TEST_CASE("whitespace-separated columns by position") {
    CHECK(parse_column("1 2 3\n4 5 6", ColumnSelector::parse("2")) == std::vector<double>{2, 5});
    CHECK(parse_column("1\t2\t3\n4  5   6\n", ColumnSelector(3)) == std::vector<double>{3, 6});
}

TEST_CASE("non-numeric entry names its line") {
    const auto msg = message_of([] { (void)parse_column("a,b\n1,q", ColumnSelector::parse("b")); });
    CHECK(msg.find('2') != std::string::npos);
    const auto msg2 = message_of([] { (void)parse_column("v\n1\n2\nnan\n4\ninf", ColumnSelector{}); });
    CHECK(msg2.find("4") != std::string::npos);
    CHECK(msg2.find("6") != std::string::npos);
}

TEST_CASE("csv quoting and headers") {
    const std::string text = "\"name, with comma\",value\n\"a\"\"b\",1.5\nc,-2e3\n";
    CHECK(parse_column(text, ColumnSelector::parse("value")) == std::vector<double>{1.5, -2000.0});
    CHECK(parse_column("1,2\n3,4\n", ColumnSelector(2)) == std::vector<double>{2, 4});
    CHECK(parse_column("\"1\",2\n\"3\",4\r\n", ColumnSelector(1)) == std::vector<double>{1, 3});
}

TEST_CASE("ingestion errors") {
    CHECK(!message_of([] { (void)parse_column("", ColumnSelector{}); }).empty());
    CHECK(!message_of([] { (void)parse_column("x\n", ColumnSelector{}); }).empty());
    const auto missing = message_of([] { (void)parse_column("x\n1\n2", ColumnSelector::parse("y")); });
    CHECK(missing.find('y') != std::string::npos);
    CHECK(!message_of([] { (void)parse_column("1,2\n3\n", ColumnSelector(2)); }).empty());
    CHECK(!message_of([] { (void)parse_column("\"open,1\n2,3", ColumnSelector(2)); }).empty());
    CHECK(!message_of([] { (void)io::ingest("/nonexistent/file.csv", ColumnSelector{}); }).empty());
}

TEST_CASE("column selector parsing") {
    CHECK(*ColumnSelector::parse("12").index() == 12);
    CHECK(*ColumnSelector::parse("score").name() == "score");
    CHECK(ColumnSelector::parse("x1").name() != nullptr);
    CHECK_THROWS_AS(ColumnSelector(0), Error);
    CHECK_THROWS_AS((void)ColumnSelector::parse(""), Error);
}
