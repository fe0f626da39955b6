#include "upml/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "upml/errors.hpp"

namespace upml {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

void write_kernel_report_csv(const std::string& path,
                             const std::vector<KernelSweepRow>& rows) {
  std::ostringstream out;
  out << "sigma0,d,m,s2,min_re_rho,min_abs_rho_over_s,max_phi_abs,"
         "bound_value\n";
  for (const KernelSweepRow& r : rows) {
    out << format_g17(r.sigma0) << ',' << format_g17(r.d) << ',' << r.m << ','
        << format_g17(r.s2) << ',' << format_g17(r.min_re_rho) << ','
        << format_g17(r.min_abs_rho_over_s) << ','
        << format_g17(r.max_phi_abs) << ',' << format_g17(r.bound_value)
        << '\n';
  }
  write_text_file(path, out.str());
}

void write_sweep_csv(const std::string& path,
                     const std::vector<ErrorReport>& reports) {
  std::ostringstream out;
  out << "sigma0,d,sigma0_d,theory_exponent,l2_hcurl_E,l2_hcurl_H,"
         "linf_hcurl_E,linf_hcurl_H,floor_estimate\n";
  for (const ErrorReport& r : reports) {
    out << format_g17(r.sigma0) << ',' << format_g17(r.d) << ','
        << format_g17(r.sigma0 * r.d) << ',' << format_g17(r.theory_exponent)
        << ',' << format_g17(r.l2_hcurl_E) << ',' << format_g17(r.l2_hcurl_H)
        << ',' << format_g17(r.linf_hcurl_E) << ','
        << format_g17(r.linf_hcurl_H) << ',' << format_g17(r.floor_estimate)
        << '\n';
  }
  write_text_file(path, out.str());
}

void write_fit_csv(const std::string& path, const DecayFit& fit) {
  std::ostringstream out;
  out << "rate,intercept,r_squared,n_points_used\n"
      << format_g17(fit.rate) << ',' << format_g17(fit.intercept) << ','
      << format_g17(fit.r_squared) << ',' << fit.n_points_used << '\n';
  write_text_file(path, out.str());
}

void write_sweep_plot(const std::string& path,
                      const std::vector<ErrorReport>& reports) {
  std::ostringstream out;
  out << "# theory_exponent  l2_hcurl_E+H  linf_hcurl_E+H  floor_estimate\n";
  for (const ErrorReport& r : reports) {
    out << format_g17(r.theory_exponent) << "  "
        << format_g17(r.l2_hcurl_E + r.l2_hcurl_H) << "  "
        << format_g17(r.linf_hcurl_E + r.linf_hcurl_H) << "  "
        << format_g17(r.floor_estimate) << '\n';
  }
  write_text_file(path, out.str());
}

void write_probe_csv(const std::string& path,
                     const std::vector<ProbeSample>& rows) {
  std::ostringstream out;
  out << "t,Ex,Ey,Ez,Hx,Hy,Hz\n";
  for (const ProbeSample& r : rows) {
    out << format_g17(r.t);
    for (const double v : r.f) out << ',' << format_g17(v);
    out << '\n';
  }
  write_text_file(path, out.str());
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return int(i);
  }
  return -1;
}

CsvTable read_numeric_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  CsvTable table;
  if (!std::getline(in, line)) throw IoError("empty csv file: " + path);
  table.header = split_commas(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_commas(line);
    if (cells.size() != table.header.size()) {
      throw IoError("ragged csv row in " + path);
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& cell : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw IoError("non-numeric cell \"" + cell + "\" in " + path);
      }
      if (used != cell.size()) {
        throw IoError("non-numeric cell \"" + cell + "\" in " + path);
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<ErrorReport> read_sweep_csv(const std::string& path) {
  const CsvTable t = read_numeric_csv(path);
  const char* names[] = {"sigma0",      "d",
                         "sigma0_d",    "theory_exponent",
                         "l2_hcurl_E",  "l2_hcurl_H",
                         "linf_hcurl_E", "linf_hcurl_H",
                         "floor_estimate"};
  int cols[9];
  for (int i = 0; i < 9; ++i) {
    cols[i] = t.column(names[i]);
    if (cols[i] < 0) {
      throw IoError(std::string("missing column ") + names[i] + " in " + path);
    }
  }
  std::vector<ErrorReport> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    ErrorReport r;
    r.sigma0 = row[cols[0]];
    r.d = row[cols[1]];
    r.theory_exponent = row[cols[3]];
    r.l2_hcurl_E = row[cols[4]];
    r.l2_hcurl_H = row[cols[5]];
    r.linf_hcurl_E = row[cols[6]];
    r.linf_hcurl_H = row[cols[7]];
    r.floor_estimate = row[cols[8]];
    r.floor_estimate_linf = row[cols[8]];
    out.push_back(r);
  }
  return out;
}

}  // namespace upml
