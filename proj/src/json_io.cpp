#include "berezin/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "berezin/error.hpp"

namespace berezin {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_into(const Json& v, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(item, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Short arrays of scalars (complex pairs, small vectors) stay on one line.
      bool flat = v.size() <= 4;
      for (const auto& item : v) flat = flat && item.is_primitive();
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_into(item, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump_into(value, indent, 0, out);
  return out;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    for (Eigen::Index l = 0; l < m.cols(); ++l) entries.push_back(complex_to_json(m(k, l)));
  }
  Json j;
  j["n"] = m.rows();
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries")) {
    throw Error(ErrorKind::kParse, "matrix JSON needs keys \"n\" and \"entries\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw Error(ErrorKind::kParse, "\"n\" must be a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(j["n"].get<long long>());
  const Json& entries = j["entries"];
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n * n) {
    throw Error(ErrorKind::kParse, "\"entries\" must hold n*n [re, im] pairs");
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index idx = 0; idx < n * n; ++idx) {
    const Json& e = entries[static_cast<std::size_t>(idx)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorKind::kParse, "entry " + std::to_string(idx) + " is not [re, im]");
    }
    m(idx / n, idx % n) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  if (!all_finite(m)) throw Error(ErrorKind::kParse, "matrix entries must be finite");
  return m;
}

ComplexMatrix read_complex_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, path + ": " + e.what());
  }
  return complex_matrix_from_json(j);
}

void write_complex_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  out << dump_json(complex_matrix_to_json(m)) << '\n';
}

}  // namespace berezin
