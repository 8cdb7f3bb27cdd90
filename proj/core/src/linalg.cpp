#include "diracwalk/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace diracwalk {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double identity_residual(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("identity_residual: matrix is not square");
  return max_abs(a - Matrix::Identity(a.rows(), a.cols()));
}

double hermiticity_residual(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("hermiticity_residual: matrix is not square");
  return max_abs(a - a.adjoint());
}

Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

void ResidualReport::add(std::string name, double value) {
  pass = pass && value <= tolerance;
  residuals.emplace_back(std::move(name), value);
}

double ResidualReport::at(std::string_view name) const {
  for (const auto& [key, value] : residuals) {
    if (key == name) return value;
  }
  throw InvalidArgument("ResidualReport: no residual named '" + std::string(name) + "'");
}

double ResidualReport::max_residual() const {
  double worst = 0.0;
  for (const auto& entry : residuals) worst = std::max(worst, entry.second);
  return worst;
}

std::vector<std::string> ResidualReport::failures() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : residuals) {
    if (!(value <= tolerance)) out.push_back(key);
  }
  return out;
}

void write_report(std::ostream& os, const ResidualReport& report) {
  for (const auto& [key, value] : report.residuals) {
    os << key << ' ' << format_double(value) << ' ' << (value <= report.tolerance ? "pass" : "fail")
       << '\n';
  }
}

std::string to_text(const ResidualReport& report) {
  std::ostringstream os;
  write_report(os, report);
  return os.str();
}

std::string format_double(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, end};
}

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidArgument("malformed complex entry '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Complex parse_complex(std::string_view token) {
  if (token.empty()) throw InvalidArgument("empty complex entry");
  if (token.back() != 'i') return {parse_real(token, token), 0.0};

  std::string_view body = token.substr(0, token.size() - 1);
  // The split is the last sign that is neither leading nor an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    const char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    // Pure imaginary, e.g. "2i" or "-i".
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, parse_real(body, token)};
  }
  const double re = parse_real(body.substr(0, split), token);
  std::string_view im_part = body.substr(split);
  double im = 0.0;
  if (im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    im = parse_real(im_part, token);
  }
  return {re, im};
}

std::string format_complex(Complex z) {
  std::string re = format_double(z.real());
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return re + im + "i";
}

void write_matrix_text(std::ostream& os, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << format_complex(m(r, c));
    }
    os << '\n';
  }
}

std::vector<Matrix> read_matrices_text(std::istream& is) {
  std::vector<Matrix> out;
  std::vector<std::vector<Complex>> rows;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (rows.empty()) return;
    const std::size_t cols = rows.front().size();
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
      }
    }
    out.push_back(std::move(m));
    rows.clear();
  };

  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      flush();
      continue;
    }
    if (line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<Complex> row;
    std::string token;
    try {
      while (ls >> token) row.push_back(parse_complex(token));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(rows.front().size()) + " entries, got " +
                            std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  flush();
  return out;
}

}  // namespace diracwalk
