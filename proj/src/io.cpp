#include "chaoslearn/io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace chaoslearn {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_missing(const std::string& s) {
  return s.empty() || s == "NA" || s == "?" || s == "nan" || s == "NaN";
}

bool parse_number(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0';
}

}  // namespace

CsvSchema abalone_schema(bool one_hot_sex) {
  CsvSchema s;
  s.task = Task::Regression;
  s.has_header = false;
  s.column_names = {"sex",     "length",  "diameter", "height", "whole",
                    "shucked", "viscera", "shell",    "rings"};
  s.target_column = "rings";
  s.categorical = one_hot_sex ? CsvSchema::Categorical::OneHot
                              : CsvSchema::Categorical::IntegerCode;
  return s;
}

CsvSchema iris_schema() {
  CsvSchema s;
  s.task = Task::Classification;
  s.has_header = true;
  s.target_column = "species";
  return s;
}

CsvSchema hcv_schema(bool drop_suspect) {
  CsvSchema s;
  s.task = Task::Classification;
  s.has_header = true;
  s.target_column = "Category";
  s.drop_columns = {""};  // unnamed row-index column
  if (drop_suspect) s.drop_target_values = {"0s=suspect Blood Donor"};
  return s;
}

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> columns;
  if (schema.has_header) {
    if (!std::getline(in, line))
      throw DataError("'" + path + "': empty file, expected header row");
    ++line_no;
    for (auto& c : split_line(line)) columns.push_back(trim(c));
  } else {
    if (schema.column_names.empty())
      throw DataError("headerless CSV requires schema column names");
    columns = schema.column_names;
  }

  int target = -1;
  std::vector<bool> dropped(columns.size(), false);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == schema.target_column) target = static_cast<int>(j);
    for (const auto& d : schema.drop_columns)
      if (columns[j] == d) dropped[j] = true;
  }
  if (target < 0)
    throw DataError("'" + path + "': target column '" + schema.target_column +
                    "' not found");
  dropped[static_cast<std::size_t>(target)] = true;

  std::vector<std::size_t> predictors;
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (!dropped[j]) predictors.push_back(j);
  if (predictors.empty()) throw DataError("'" + path + "': no predictor columns");

  std::vector<std::vector<std::string>> raw;
  std::vector<std::string> targets_raw;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != columns.size())
      throw DataError("'" + path + "' line " + std::to_string(line_no) + ": " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(columns.size()));
    for (auto& f : fields) f = trim(f);

    const std::string& tv = fields[static_cast<std::size_t>(target)];
    if (std::find(schema.drop_target_values.begin(),
                  schema.drop_target_values.end(),
                  tv) != schema.drop_target_values.end())
      continue;
    if (is_missing(tv)) continue;

    std::vector<std::string> row;
    row.reserve(predictors.size());
    for (auto j : predictors) row.push_back(fields[j]);
    raw.push_back(std::move(row));
    targets_raw.push_back(tv);
  }
  if (raw.empty()) throw DataError("'" + path + "': no data rows");

  // classify predictor columns as numeric or categorical
  const std::size_t p = predictors.size();
  std::vector<bool> numeric(p, true);
  for (const auto& row : raw)
    for (std::size_t j = 0; j < p; ++j) {
      double v;
      if (!is_missing(row[j]) && !parse_number(row[j], v)) numeric[j] = false;
    }

  std::vector<std::vector<std::string>> levels(p);
  for (std::size_t j = 0; j < p; ++j) {
    if (numeric[j]) continue;
    std::set<std::string> uniq;
    for (const auto& row : raw)
      if (!is_missing(row[j])) uniq.insert(row[j]);
    levels[j].assign(uniq.begin(), uniq.end());
  }

  // missing-value policy over predictor cells
  std::vector<bool> keep(raw.size(), true);
  if (schema.missing == CsvSchema::Missing::Drop) {
    for (std::size_t i = 0; i < raw.size(); ++i)
      for (std::size_t j = 0; j < p; ++j)
        if (is_missing(raw[i][j])) keep[i] = false;
  }

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (keep[i]) kept.push_back(i);
  if (kept.empty()) throw DataError("'" + path + "': all rows dropped");

  // output column layout
  const bool one_hot = schema.categorical == CsvSchema::Categorical::OneHot;
  Index n_out = 0;
  for (std::size_t j = 0; j < p; ++j)
    n_out += (!numeric[j] && one_hot) ? static_cast<Index>(levels[j].size()) : 1;

  Dataset ds;
  ds.task = schema.task;
  ds.X = Matrix::Zero(static_cast<Index>(kept.size()), n_out);

  // column means for imputation (numeric columns only)
  std::vector<double> col_mean(p, 0.0);
  if (schema.missing == CsvSchema::Missing::ImputeMean) {
    for (std::size_t j = 0; j < p; ++j) {
      if (!numeric[j]) continue;
      double sum = 0.0;
      std::size_t cnt = 0;
      for (auto i : kept) {
        double v;
        if (!is_missing(raw[i][j]) && parse_number(raw[i][j], v)) {
          sum += v;
          ++cnt;
        }
      }
      col_mean[j] = cnt ? sum / static_cast<double>(cnt) : 0.0;
    }
  }

  for (std::size_t r = 0; r < kept.size(); ++r) {
    const auto& row = raw[kept[r]];
    Index col = 0;
    for (std::size_t j = 0; j < p; ++j) {
      if (numeric[j]) {
        double v;
        if (is_missing(row[j]))
          v = col_mean[j];
        else if (!parse_number(row[j], v))
          throw DataError("'" + path + "': unparsable numeric field '" +
                          row[j] + "'");
        ds.X(static_cast<Index>(r), col++) = v;
      } else {
        const auto it =
            std::find(levels[j].begin(), levels[j].end(), row[j]);
        if (it == levels[j].end())
          throw DataError("'" + path + "': missing categorical value in column " +
                          columns[predictors[j]]);
        const auto code = static_cast<Index>(it - levels[j].begin());
        if (one_hot)
          ds.X(static_cast<Index>(r), col + code) = 1.0;
        else
          ds.X(static_cast<Index>(r), col) = static_cast<double>(code);
        col += one_hot ? static_cast<Index>(levels[j].size()) : 1;
      }
    }
  }

  ds.y.resize(static_cast<Index>(kept.size()));
  if (schema.task == Task::Regression) {
    for (std::size_t r = 0; r < kept.size(); ++r) {
      double v;
      if (!parse_number(targets_raw[kept[r]], v))
        throw DataError("'" + path + "': unparsable regression target '" +
                        targets_raw[kept[r]] + "'");
      ds.y[static_cast<Index>(r)] = v;
    }
  } else {
    std::set<std::string> uniq;
    for (auto i : kept) uniq.insert(targets_raw[i]);
    ds.class_names.assign(uniq.begin(), uniq.end());
    for (std::size_t r = 0; r < kept.size(); ++r) {
      const auto it = std::find(ds.class_names.begin(), ds.class_names.end(),
                                targets_raw[kept[r]]);
      ds.y[static_cast<Index>(r)] =
          static_cast<double>(it - ds.class_names.begin());
    }
  }

  ds.validate();
  return ds;
}

namespace {

std::uint32_t read_be32(std::istream& in, const std::string& path,
                        std::size_t offset) {
  unsigned char buf[4];
  in.read(reinterpret_cast<char*>(buf), 4);
  if (!in)
    throw DataError("'" + path + "': truncated at byte offset " +
                    std::to_string(offset));
  return (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
         (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
}

void write_be32(std::ostream& out, std::uint32_t v) {
  unsigned char buf[4] = {static_cast<unsigned char>(v >> 24),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v)};
  out.write(reinterpret_cast<const char*>(buf), 4);
}

}  // namespace

Dataset load_mnist_idx(const std::string& images_path,
                       const std::string& labels_path) {
  std::ifstream img(images_path, std::ios::binary);
  if (!img) throw DataError("cannot open '" + images_path + "'");
  const std::uint32_t img_magic = read_be32(img, images_path, 0);
  if (img_magic != 0x00000803u)
    throw DataError("'" + images_path + "': bad magic number at byte offset 0 (got 0x" +
                    [&] {
                      char b[16];
                      std::snprintf(b, sizeof b, "%08x", img_magic);
                      return std::string(b);
                    }() +
                    ", want 0x00000803)");
  const std::uint32_t n = read_be32(img, images_path, 4);
  const std::uint32_t rows = read_be32(img, images_path, 8);
  const std::uint32_t cols = read_be32(img, images_path, 12);

  std::ifstream lab(labels_path, std::ios::binary);
  if (!lab) throw DataError("cannot open '" + labels_path + "'");
  const std::uint32_t lab_magic = read_be32(lab, labels_path, 0);
  if (lab_magic != 0x00000801u)
    throw DataError("'" + labels_path + "': bad magic number at byte offset 0");
  const std::uint32_t n_lab = read_be32(lab, labels_path, 4);
  if (n != n_lab)
    throw DataError("image/label counts differ (" + std::to_string(n) + " vs " +
                    std::to_string(n_lab) + ")");

  const std::size_t pixels = std::size_t(rows) * cols;
  Dataset ds;
  ds.task = Task::Classification;
  ds.X.resize(static_cast<Index>(n), static_cast<Index>(pixels));
  ds.y.resize(static_cast<Index>(n));

  std::vector<unsigned char> buf(pixels);
  for (std::uint32_t i = 0; i < n; ++i) {
    img.read(reinterpret_cast<char*>(buf.data()), static_cast<long>(pixels));
    if (!img)
      throw DataError("'" + images_path + "': truncated at byte offset " +
                      std::to_string(16 + std::size_t(i) * pixels));
    for (std::size_t px = 0; px < pixels; ++px)
      ds.X(static_cast<Index>(i), static_cast<Index>(px)) =
          static_cast<double>(buf[px]);
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    unsigned char l;
    lab.read(reinterpret_cast<char*>(&l), 1);
    if (!lab)
      throw DataError("'" + labels_path + "': truncated at byte offset " +
                      std::to_string(8 + std::size_t(i)));
    if (l > 9)
      throw DataError("'" + labels_path + "': label out of range at item " +
                      std::to_string(i));
    ds.y[static_cast<Index>(i)] = static_cast<double>(l);
  }

  ds.class_names = {"0", "1", "2", "3", "4", "5", "6", "7", "8", "9"};
  ds.validate();
  return ds;
}

void write_idx_images(const std::string& path, const Matrix& images, int rows,
                      int cols) {
  if (images.cols() != static_cast<Index>(rows) * cols)
    throw DataError("image width mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_be32(out, 0x00000803u);
  write_be32(out, static_cast<std::uint32_t>(images.rows()));
  write_be32(out, static_cast<std::uint32_t>(rows));
  write_be32(out, static_cast<std::uint32_t>(cols));
  for (Index i = 0; i < images.rows(); ++i)
    for (Index j = 0; j < images.cols(); ++j) {
      const auto b = static_cast<unsigned char>(images(i, j));
      out.write(reinterpret_cast<const char*>(&b), 1);
    }
}

void write_idx_labels(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_be32(out, 0x00000801u);
  write_be32(out, static_cast<std::uint32_t>(labels.size()));
  for (int l : labels) {
    const auto b = static_cast<unsigned char>(l);
    out.write(reinterpret_cast<const char*>(&b), 1);
  }
}

Matrix import_embedding(const std::string& path, Index n_rows) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    for (const auto& f : split_line(line)) {
      double v;
      if (!parse_number(trim(f), v))
        throw DataError("'" + path + "' line " + std::to_string(line_no) +
                        ": unparsable value '" + trim(f) + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError("'" + path + "' line " + std::to_string(line_no) +
                      ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("'" + path + "': empty embedding");
  if (n_rows >= 0 && static_cast<Index>(rows.size()) != n_rows)
    throw DataError("embedding has " + std::to_string(rows.size()) +
                    " rows, expected " + std::to_string(n_rows));
  Matrix m(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out.precision(17);
  if (!header.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j)
      out << (j ? "," : "") << header[j];
    out << "\n";
  }
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << "\n";
  }
}

}  // namespace chaoslearn
