#ifndef FSA_TABLES_HPP
#define FSA_TABLES_HPP

#include <string>
#include <vector>

namespace fsa::tables {

/// Pass/fail rule attached to a result row.
enum class CheckKind {
  none,        // reported only
  band10x,     // error within a factor 10 of check_param
  floor_val,   // error <= check_param
  ratio_prev,  // error / previous row's error <= check_param (decay shape)
};

struct RowResult {
  std::string table;
  std::string kernel;
  std::string case_label;
  int dim = 0;
  double L = 0.0;
  double gamma = 1.0;  // compressed-axis gamma (1 when isotropic)
  int N = 0;
  double h = 0.0;
  double eps = 0.0;
  double error = 0.0;
  double expected_error = 0.0;  // value this configuration is known to give
  CheckKind check = CheckKind::none;
  double check_param = 0.0;
  bool pass = true;
};

struct TableOptions {
  double lambda = 1.0;  // Yukawa screening for table5
};

/// Names: table2-iso, table2-aniso, table4, table5.
std::vector<RowResult> run_table(const std::string& name,
                                 const TableOptions& opt = {});

std::vector<std::string> table_names();

/// CSV with the fixed header
/// kernel,dim,case,L,gamma,N,h,eps,error,expected_error.
std::string to_csv(const std::vector<RowResult>& rows);

bool all_pass(const std::vector<RowResult>& rows);

}  // namespace fsa::tables

#endif  // FSA_TABLES_HPP
