#include "opmeans/matrix_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "opmeans/errors.hpp"

namespace opmeans {

namespace {

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, int line) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("invalid number '" + std::string(s) + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite number '" + std::string(s) + "'", line);
  return v;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string format_complex(Complex z) {
  std::string out = shortest(z.real());
  if (z.imag() == 0.0 && !std::signbit(z.imag())) return out;
  out += std::signbit(z.imag()) ? '-' : '+';
  out += shortest(std::abs(z.imag()));
  out += 'i';
  return out;
}

Complex parse_complex(std::string_view token, int line) {
  if (token.empty()) throw ParseError("empty complex literal", line);
  if (token.back() != 'i') return {parse_double(token, line), 0.0};

  const std::string_view body = token.substr(0, token.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    throw ParseError("complex literal '" + std::string(token) + "' needs a real part", line);
  }
  const double re = parse_double(body.substr(0, split), line);
  const double mag = parse_double(body.substr(split + 1), line);
  if (body.substr(split + 1).front() == '-' || body.substr(split + 1).front() == '+') {
    throw ParseError("malformed complex literal '" + std::string(token) + "'", line);
  }
  return {re, body[split] == '-' ? -mag : mag};
}

std::string format_matrix(const HermitianMatrix& m, std::string_view label) {
  std::string out;
  if (!label.empty()) {
    out += "name: ";
    out += label;
    out += '\n';
  }
  out += "hmat " + std::to_string(m.dim()) + '\n';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j > 0) out += ' ';
      out += format_complex(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_matrix_file(const std::vector<LabeledMatrix>& matrices) {
  std::string out;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    if (k > 0) out += '\n';
    out += format_matrix(matrices[k].matrix, matrices[k].label);
  }
  return out;
}

std::vector<LabeledMatrix> parse_matrix_file(std::string_view text) {
  std::vector<LabeledMatrix> out;
  std::string pending_label;
  std::size_t dim = 0;
  std::size_t rows_read = 0;
  std::vector<Complex> entries;
  int header_line = 0;
  int label_line = 0;
  int last_content_line = 0;  // end-of-input errors point here

  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) last_content_line = line_no;

    if (rows_read < dim) {
      if (line.empty()) throw ParseError("blank line inside matrix body", line_no);
      const auto tokens = split_ws(line);
      if (tokens.size() != dim) {
        throw ParseError("expected " + std::to_string(dim) + " entries, got " +
                             std::to_string(tokens.size()),
                         line_no);
      }
      for (std::string_view tok : tokens) entries.push_back(parse_complex(tok, line_no));
      if (++rows_read == dim) {
        Matrix m(dim, dim, std::move(entries));
        HermitianMatrix h(m);
        if (h.defect() > 1e-8 * std::max(1.0, m.frobenius_norm())) {
          throw ParseError("matrix is not Hermitian (skew part norm " +
                               format_value(h.defect()) + ")",
                           header_line);
        }
        out.push_back({std::move(pending_label), std::move(h)});
        pending_label.clear();
        entries.clear();
        dim = 0;
        rows_read = 0;
      }
      continue;
    }

    if (line.empty()) continue;
    if (line.starts_with("name:")) {
      if (!pending_label.empty()) throw ParseError("label without matrix", line_no);
      pending_label = std::string(trim(line.substr(5)));
      label_line = line_no;
      if (pending_label.empty()) throw ParseError("empty label", line_no);
      continue;
    }
    const auto tokens = split_ws(line);
    if (tokens.size() == 2 && tokens[0] == "hmat") {
      std::size_t n = 0;
      const auto res = std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), n);
      if (res.ec != std::errc() || res.ptr != tokens[1].data() + tokens[1].size() || n == 0) {
        throw ParseError("invalid dimension '" + std::string(tokens[1]) + "'", line_no);
      }
      dim = n;
      rows_read = 0;
      header_line = line_no;
      entries.reserve(n * n);
      continue;
    }
    throw ParseError("expected 'hmat <dim>' or 'name: <label>', got '" + std::string(line) + "'",
                     line_no);
  }
  if (rows_read < dim)
    throw ParseError("unexpected end of input inside matrix", last_content_line);
  if (!pending_label.empty()) throw ParseError("label without matrix", label_line);
  return out;
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace opmeans
