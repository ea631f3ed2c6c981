#include <doctest.h>

#include <filesystem>
#include <fmt/format.h>
#include <sstream>
#include <unistd.h>

#include "helpers.hpp"
#include "stk/app.hpp"
#include "stk/csv.hpp"
#include "stk/csv_input.hpp"
#include "stk/error.hpp"

using namespace stk;
using namespace stk::testing;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() / fmt::format("stk_app_{}_{}", ::getpid(), counter++);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    [[nodiscard]] std::string operator/(std::string_view name) const { return (path / name).string(); }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("ISO-8601 parsing") {
    using namespace std::chrono;
    const Instant day{sys_days{year{2021} / 3 / 4}};
    CHECK(parse_iso8601("2021-03-04") == day);
    CHECK(parse_iso8601("2021-03-04T05:06") == day + hours{5} + minutes{6});
    CHECK(parse_iso8601("2021-03-04 05:06:07") == day + hours{5} + minutes{6} + seconds{7});
    CHECK(parse_iso8601("2021-03-04T05:06:07.250Z") == day + hours{5} + minutes{6} + seconds{7});
    CHECK(parse_iso8601("2021-03-04T05:06:07+02:00") == day + hours{3} + minutes{6} + seconds{7});
    CHECK(parse_iso8601("2021-03-04T05:06:07-0130") == day + hours{6} + minutes{36} + seconds{7});
    CHECK_FALSE(parse_iso8601("2021-02-30"));
    CHECK_FALSE(parse_iso8601("2021/03/04"));
    CHECK_FALSE(parse_iso8601("2021-03-04T25:00"));
    CHECK_FALSE(parse_iso8601("2021-03-04x"));
    CHECK(parse_datetime("04/03/2021 10:00", "%d/%m/%Y %H:%M") == day + hours{10});
    CHECK_FALSE(parse_datetime("04/03/2021", "%d/%m/%Y %H:%M"));
}

TEST_CASE("CSV field splitting") {
    CHECK(csv::split_line("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(csv::split_line(R"("x,y","say ""hi""",z)") == std::vector<std::string>{"x,y", "say \"hi\"", "z"});
    CHECK_THROWS_AS((void)csv::split_line("\"open"), Error);
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::escape("q\"") == "\"q\"\"\"");
}

TEST_CASE("parse_series_csv selects columns and reports line numbers") {
    std::string text = "id,when,level\n";
    for (int i = 0; i < 30; ++i) text += fmt::format("{},2022-01-{:02d},{}\n", i, i + 1, i * 0.5);
    CsvReadOptions by_name;
    by_name.datetime_column = "when";
    by_name.value_column = "level";
    const auto ts = parse_series_csv(text, by_name);
    CHECK(ts.size() == 30);
    CHECK(ts.values()[4] == 2.0);
    CsvReadOptions by_index;
    by_index.datetime_column = "1";
    by_index.value_column = "2";
    CHECK(parse_series_csv(text, by_index).values()[29] == 14.5);

    auto broken = [&](std::string bad_line, std::size_t line) {
        std::string t = "date,value\n";
        for (std::size_t i = 2; i < 40; ++i) {
            t += i == line ? bad_line + "\n" : fmt::format("{},{}\n", format_iso8601(daily_instants(40)[i]), i);
        }
        return t;
    };
    try {
        (void)parse_series_csv(broken("2020-01-11,abc", 10));
        FAIL("bad value accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        CHECK(std::string(e.what()).find("line 10") != std::string::npos);
    }
    try {
        (void)parse_series_csv(broken("yesterday,1", 5));
        FAIL("bad datetime accepted");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 5") != std::string::npos);
    }
    try {
        (void)parse_series_csv(broken("2020-01-08,1,extra", 7));
        FAIL("ragged row accepted");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 7") != std::string::npos);
    }
    try {
        (void)parse_series_csv("date,value\n2020-01-02,1\n2020-01-01,2\n");
        FAIL("decreasing timestamps accepted");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CsvReadOptions same;
    same.value_column = "0";
    CHECK_THROWS_AS((void)parse_series_csv(text, same), Error);
    CsvReadOptions missing;
    missing.value_column = "nope";
    CHECK_THROWS_AS((void)parse_series_csv(text, missing), Error);
}

TEST_CASE("synth writes a deterministic datetime,value file") {
    TempDir dir;
    const auto a = cli({"synth", "--n", "1095", "--freq", "daily", "--seed", "42", "--output", dir / "a.csv"});
    const auto b = cli({"synth", "--n", "1095", "--freq", "daily", "--seed", "42", "--output", dir / "b.csv"});
    REQUIRE(a.code == kExitOk);
    REQUIRE(b.code == kExitOk);
    const auto text = read_text_file(dir / "a.csv");
    CHECK(text == read_text_file(dir / "b.csv"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 1096);
    CHECK(text.rfind("datetime,value\n2020-01-01T00:00:00Z,", 0) == 0);

    CHECK(cli({"synth", "--n", "0", "--output", dir / "c.csv"}).code == kExitInvalid);
    CHECK(cli({"synth", "--n", "100", "--freq", "fortnightly", "--output", dir / "c.csv"}).code == kExitInvalid);
    CHECK(cli({"synth", "--n", "100", "--arch", "0.2", "--output", dir / "c.csv"}).code == kExitInvalid);
    CHECK(cli({"synth", "--n", "100", "--bogus", "--output", dir / "c.csv"}).code == kExitInvalid);
    CHECK(cli({"synth", "--n", "100", "--output", "/nonexistent-dir/x/c.csv"}).code == kExitIo);
}

TEST_CASE("analyze end to end") {
    TempDir dir;
    REQUIRE(cli({"synth", "--n", "1095", "--seed", "42", "--amplitude", "1", "--output", dir / "in.csv"}).code ==
            kExitOk);
    const auto r = cli({"analyze", "--input", dir / "in.csv", "--table", dir / "t.csv", "--markdown", dir / "r.md"});
    CHECK(r.code == kExitOk);
    CHECK(r.err.empty());
    const auto table = parse_table_csv(read_text_file(dir / "t.csv"));
    CHECK(table.size() == 17);
    CHECK(read_text_file(dir / "r.md").find("## Seasonality") != std::string::npos);

    // Same input, same stdout.
    const auto again = cli({"analyze", "--input", dir / "in.csv"});
    const auto third = cli({"analyze", "--input", dir / "in.csv"});
    CHECK(again.out == third.out);
    CHECK(again.out.find("run:") == std::string::npos);
    CHECK(cli({"analyze", "--input", dir / "in.csv", "--verbose"}).out.find("run:") != std::string::npos);

    // JSON chosen by extension or flag.
    CHECK(cli({"analyze", "--input", dir / "in.csv", "--table", dir / "t.json"}).code == kExitOk);
    CHECK(parse_table_json(read_text_file(dir / "t.json")) == table);
    CHECK(cli({"analyze", "--input", dir / "in.csv", "--table", dir / "t.out", "--table-format", "json"}).code ==
          kExitOk);
    CHECK(read_text_file(dir / "t.out").front() == '[');
}

TEST_CASE("analyze exit codes") {
    TempDir dir;
    CHECK(cli({"analyze", "--input", dir / "missing.csv"}).code == kExitIo);

    std::string text = "date,value\n";
    for (int i = 0; i < 100; ++i) {
        text += i == 55 ? "2020-03-01,abc\n" : fmt::format("{},{}\n", format_iso8601(daily_instants(100)[i]), i % 7);
    }
    write_text_file(dir / "bad.csv", text);
    const auto bad = cli({"analyze", "--input", dir / "bad.csv"});
    CHECK(bad.code == kExitInvalid);
    CHECK(bad.err.find("line 57") != std::string::npos);

    CHECK(cli({"analyze", "--input", dir / "bad.csv", "--alpha", "0.7"}).code == kExitInvalid);
    CHECK(cli({"analyze"}).code == kExitInvalid);

    REQUIRE(cli({"synth", "--n", "500", "--unit-root", "--output", dir / "rw.csv"}).code == kExitOk);
    CHECK(cli({"analyze", "--input", dir / "rw.csv"}).code == kExitOk);
    CHECK(cli({"analyze", "--input", dir / "rw.csv", "--fail-on-detection"}).code == kExitDetection);
    CHECK(cli({"analyze", "--input", dir / "rw.csv", "--markdown", "/nonexistent-dir/x/r.md"}).code == kExitIo);
}

TEST_CASE("every valid synth recipe round-trips through analyze") {
    TempDir dir;
    const std::vector<std::vector<std::string>> recipes{
        {"--n", "20"},
        {"--n", "60", "--freq", "hourly", "--amplitude", "2", "--period", "24"},
        {"--n", "120", "--freq", "weekly", "--slope", "0.3", "--ar", "0.5"},
        {"--n", "48", "--freq", "monthly", "--amplitude", "1", "--period", "12", "--unit-root"},
        {"--n", "40", "--freq", "quarterly", "--level-break", "0.5,4"},
        {"--n", "30", "--freq", "yearly", "--sigma", "0"},
        {"--n", "300", "--arch", "0.2,0.5", "--variance-break", "0.6,2"},
        {"--n", "200", "--start", "2001-05-31T12:30:00Z", "--freq", "monthly", "--baseline", "-1e6"},
    };
    for (std::size_t i = 0; i < recipes.size(); ++i) {
        const auto file = dir / fmt::format("r{}.csv", i);
        std::vector<std::string> args{"synth", "--output", file};
        args.insert(args.end(), recipes[i].begin(), recipes[i].end());
        INFO("recipe " << i);
        REQUIRE(cli(args).code == kExitOk);
        const auto r = cli({"analyze", "--input", file});
        CHECK(r.code == kExitOk);
        CHECK(r.err.empty());
    }
}
