#include "doctest.h"

#include <filesystem>
#include <string>

#include "mappergpt/util.hpp"
#include "testutil.hpp"

using namespace mappergpt;

TEST_SUITE("util") {

TEST_CASE("trim strips ascii whitespace from both ends") {
    CHECK(trim("") == "");
    CHECK(trim("   ") == "");
    CHECK(trim("abc") == "abc");
    CHECK(trim("  a b  ") == "a b");
    CHECK(trim("\t x \r\n") == "x");
}

TEST_CASE("split keeps empty fields") {
    CHECK(split("a\tb\tc", '\t') == std::vector<std::string_view>{"a", "b", "c"});
    CHECK(split("a;;c", ';') == std::vector<std::string_view>{"a", "", "c"});
    CHECK(split("", ';') == std::vector<std::string_view>{""});
    CHECK(split(";", ';') == std::vector<std::string_view>{"", ""});
}

TEST_CASE("split_lines handles lf, crlf, and missing final newline") {
    CHECK(split_lines("a\nb\n") == std::vector<std::string_view>{"a", "b"});
    CHECK(split_lines("a\r\nb\r\n") == std::vector<std::string_view>{"a", "b"});
    CHECK(split_lines("a\nb") == std::vector<std::string_view>{"a", "b"});
    CHECK(split_lines("") == std::vector<std::string_view>{});
    CHECK(split_lines("\n\n") == std::vector<std::string_view>{"", ""});
}

TEST_CASE("to_lower and iequals fold ascii only") {
    CHECK(to_lower("ABC-123") == "abc-123");
    CHECK(iequals("EXACT_MATCH", "exact_match"));
    CHECK(iequals("", ""));
    CHECK_FALSE(iequals("abc", "abd"));
    CHECK_FALSE(iequals("abc", "ab"));
}

TEST_CASE("sha256_hex matches published test vectors") {
    // FIPS 180-2 examples, independently published values.
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("format_fixed pins the decimal count") {
    CHECK(format_fixed(0.0, 6) == "0.000000");
    CHECK(format_fixed(1.5, 2) == "1.50");
    CHECK(format_fixed(2.0 / 3.0, 4) == "0.6667");
}

TEST_CASE("format_trimmed drops trailing zeros and bare points") {
    CHECK(format_trimmed(1.0, 4) == "1");
    CHECK(format_trimmed(0.9, 4) == "0.9");
    CHECK(format_trimmed(0.25, 4) == "0.25");
    CHECK(format_trimmed(0.5000, 4) == "0.5");
    CHECK(format_trimmed(1.0 / 3.0, 4) == "0.3333");
    CHECK(format_trimmed(0.0, 4) == "0");
}

TEST_CASE("read_file round-trips write_file_atomic") {
    testutil::TempDir dir;
    const auto path = dir / "out.txt";
    write_file_atomic(path, "line one\nline two\n");
    CHECK(read_file(path) == "line one\nline two\n");

    SUBCASE("overwrite replaces content atomically") {
        write_file_atomic(path, "replaced");
        CHECK(read_file(path) == "replaced");
    }
    SUBCASE("no temp files are left behind") {
        std::size_t entries = 0;
        for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path()))
            ++entries;
        CHECK(entries == 1);
    }
}

TEST_CASE("read_file throws on a missing path") {
    testutil::TempDir dir;
    CHECK_THROWS_AS(read_file(dir / "absent.txt"), DataError);
}

TEST_CASE("write_file_atomic throws when the target directory is missing") {
    testutil::TempDir dir;
    CHECK_THROWS_AS(write_file_atomic(dir / "no" / "such" / "dir.txt", "x"), DataError);
}

} // TEST_SUITE
