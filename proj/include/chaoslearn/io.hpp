#pragma once

#include <string>
#include <vector>

#include "chaoslearn/dataset.hpp"
#include "chaoslearn/types.hpp"

namespace chaoslearn {

// Column-oriented description of a delimited text file. Files use a comma
// delimiter, '.' decimal separator and UTF-8 text. Headerless files supply
// column_names explicitly.
struct CsvSchema {
  Task task = Task::Classification;
  bool has_header = true;
  std::vector<std::string> column_names;  // required when has_header == false
  std::string target_column;
  std::vector<std::string> drop_columns;
  std::vector<std::string> drop_target_values;
  // applied before class extraction, e.g. folding a sub-category into its
  // parent class
  std::vector<std::pair<std::string, std::string>> relabel_target_values;

  enum class Categorical { IntegerCode, OneHot };
  Categorical categorical = Categorical::IntegerCode;

  enum class Missing { Drop, ImputeMean };
  Missing missing = Missing::Drop;
};

// Ready-made schemas for the benchmark datasets.
CsvSchema abalone_schema(bool one_hot_sex = false);
CsvSchema iris_schema();

// The suspect-donor rows can be dropped (default), merged into the donor
// class, or kept as their own class.
enum class HcvSuspectPolicy { Drop, MergeIntoDonor, Keep };
CsvSchema hcv_schema(HcvSuspectPolicy policy = HcvSuspectPolicy::Drop);
inline CsvSchema hcv_schema(bool drop_suspect) {
  return hcv_schema(drop_suspect ? HcvSuspectPolicy::Drop
                                 : HcvSuspectPolicy::Keep);
}

Dataset load_csv(const std::string& path, const CsvSchema& schema);

// IDX image/label pair (big-endian, magic 0x803 for images and 0x801 for
// labels). Pixels are kept raw in [0, 255].
Dataset load_mnist_idx(const std::string& images_path,
                       const std::string& labels_path);

void write_idx_images(const std::string& path, const Matrix& images,
                      int rows, int cols);
void write_idx_labels(const std::string& path, const std::vector<int>& labels);

// Headerless CSV, one row per sample; validated against n_rows when >= 0.
Matrix import_embedding(const std::string& path, Index n_rows = -1);

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& header = {});

}  // namespace chaoslearn
