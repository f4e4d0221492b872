// Writes the twelve trajectory-planning instances as problem files.
//
//   gen_trajectories OUTDIR

#include <fstream>
#include <iostream>

#include "stochsat/benchmarks.hpp"
#include "stochsat/parser.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_trajectories OUTDIR\n";
    return 2;
  }
  const std::string dir = argv[1];
  for (const auto& inst : stochsat::trajectory_table()) {
    const std::string path = dir + "/" + inst.id + ".ssc";
    std::ofstream out(path);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 1;
    }
    out << "# Trajectory instance " << inst.id << ": " << inst.config.steps << " waypoints, "
        << inst.config.obstacles.size() << " obstacle(s); published lower bound "
        << inst.reported_lower_bound << ".\n";
    out << stochsat::print_problem(stochsat::make_trajectory(inst.config));
    std::cout << path << "\n";
  }
  return 0;
}
