#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "opmeans/errors.hpp"
#include "opmeans/gen.hpp"
#include "opmeans/matrix_file.hpp"

using namespace opmeans;

namespace {

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data().data(), b.data().data(), a.data().size() * sizeof(Complex)) == 0;
}

int parse_error_line(const std::string& text) {
  try {
    (void)parse_matrix_file(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("complex literals") {
  CHECK(format_complex({0.3, 0.0}) == "0.3");
  CHECK(format_complex({0.1, 0.2}) == "0.1+0.2i");
  CHECK(format_complex({0.1, -0.2}) == "0.1-0.2i");
  CHECK(format_complex({-1.0, 1e-300}) == "-1+1e-300i");
  CHECK(parse_complex("0.1-0.2i") == Complex(0.1, -0.2));
  CHECK(parse_complex("-3") == Complex(-3.0, 0.0));
  CHECK(parse_complex("1e-5+2.5e+3i") == Complex(1e-5, 2.5e3));
  CHECK_THROWS_AS(parse_complex("abc"), ParseError);
  CHECK_THROWS_AS(parse_complex("0.1+i"), ParseError);
  CHECK_THROWS_AS(parse_complex("0.1+-2i"), ParseError);
  CHECK_THROWS_AS(parse_complex("nan"), ParseError);
  CHECK_THROWS_AS(parse_complex("2i"), ParseError);
}

TEST_CASE("format and parse one matrix") {
  const HermitianMatrix h(Matrix(2, 2, {0.3, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3}));
  const std::string text = format_matrix(h, "A");
  CHECK(text == "name: A\nhmat 2\n0.3 0.1+0.2i\n0.1-0.2i 0.3\n");
  const auto parsed = parse_matrix_file(text);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].label == "A");
  CHECK(parsed[0].matrix == h);
}

TEST_CASE("comments, blank lines and several matrices") {
  const std::string text =
      "# two matrices\n"
      "\n"
      "name: first\n"
      "hmat 1\n"
      "0.25  # trailing comment\n"
      "\n"
      "hmat 2\n"
      "1 0\n"
      "0 2\n";
  const auto parsed = parse_matrix_file(text);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].label == "first");
  CHECK(parsed[0].matrix(0, 0) == Complex(0.25, 0.0));
  CHECK(parsed[1].label.empty());
  CHECK(parsed[1].matrix(1, 1) == Complex(2.0, 0.0));
}

TEST_CASE("round trip is bitwise on random matrices") {
  Rng root(1234);
  std::vector<LabeledMatrix> all;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i));
    const std::size_t n = 1 + static_cast<std::size_t>(i % 8);
    const double scale = std::pow(10.0, rng.uniform(-200.0, 200.0));
    const auto h = gen::random_hermitian(n, scale, rng);
    const auto back = parse_matrix_file(format_matrix(h));
    REQUIRE(back.size() == 1);
    CHECK(bitwise_equal(back[0].matrix.matrix(), h.matrix()));
    if (i < 50) all.push_back({"m" + std::to_string(i), h});
  }
  const auto many = parse_matrix_file(format_matrix_file(all));
  REQUIRE(many.size() == all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(many[i].label == all[i].label);
    CHECK(bitwise_equal(many[i].matrix.matrix(), all[i].matrix.matrix()));
  }
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("hmat 2\n1 0\n") == 2);
  CHECK(parse_error_line("hmat 2\n1 0 0\n0 1\n") == 2);
  CHECK(parse_error_line("hmat 2\n1 x\n0 1\n") == 2);
  CHECK(parse_error_line("# c\nhmat 0\n") == 2);
  CHECK(parse_error_line("matrix 2\n") == 1);
  CHECK(parse_error_line("hmat 2\n1 0\n\n0 1\n") == 3);
  CHECK(parse_error_line("name: lonely\n") == 1);
  CHECK(parse_error_line("hmat 2\n1 5\n0 1\n") == 1);  // not Hermitian: reported at the header
  CHECK(parse_error_line("hmat 1\ninf\n") == 2);
  try {
    (void)parse_matrix_file("hmat 2\n1 0\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("line 2: ", 0) == 0);
  }
}

TEST_CASE("tiny skew parts are absorbed") {
  const auto parsed = parse_matrix_file("hmat 2\n1 0.5+1e-17i\n0.5 1\n");
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].matrix.defect() > 0.0);
  CHECK(parsed[0].matrix(0, 1) == std::conj(parsed[0].matrix(1, 0)));
}

TEST_CASE("empty input yields no matrices") {
  CHECK(parse_matrix_file("").empty());
  CHECK(parse_matrix_file("# nothing\n\n").empty());
}
