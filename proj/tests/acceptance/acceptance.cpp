#include <CLI11.hpp>

#include <cstdio>
#include <vector>

#include "fracplap/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Runs the acceptance criteria and prints one verdict line per criterion"};
  std::vector<int> only;
  app.add_option("--criterion", only, "Criterion id(s) to run; default all")
      ->check(CLI::Range(1, fracplap::criterion_count()));
  CLI11_PARSE(app, argc, argv);

  if (only.empty())
    for (int id = 1; id <= fracplap::criterion_count(); ++id) only.push_back(id);

  int failed = 0;
  for (int id : only) {
    const fracplap::CriterionResult r = fracplap::run_criterion(id);
    std::fputs(fracplap::format_result(r).c_str(), stdout);
    std::fflush(stdout);
    if (!r.pass()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(only.size()) - failed, only.size());
  return failed == 0 ? 0 : 1;
}
