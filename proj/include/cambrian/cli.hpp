#pragma once

#include <iostream>
#include <string>
#include <vector>

#include "cambrian/io.hpp"

namespace cambrian {

// Runs f with a system built on the exact backend when every bond label
// supports it, on the floating-point backend otherwise.
template <class F>
auto with_system(const SystemSpec& spec, F&& f) {
  if (all_labels_exact(spec.matrix)) {
    return f(CoxeterSystem<Exact>::build(spec.matrix, spec.names));
  }
  return f(CoxeterSystem<double>::build(spec.matrix, spec.names));
}

struct SortOptions {
  std::string system_path;
  std::string gamma;
  std::string word;
};

inline int run_sort(const SortOptions& opt, std::ostream& out) {
  return with_system(load_system(opt.system_path), [&](const auto& sys) {
    const GammaSpec gamma = parse_gamma(sys, opt.gamma);
    const auto w = canonicalize(sys, parse_word(sys, opt.word));
    const SortingWord sw = sorting_word(w, gamma);
    out << render_sorting_word(sys, sw) << "  sortable="
        << (sw.first_violating_block() < 0 ? "true" : "false") << "\n";
    return 0;
  });
}

struct IntervalOptions {
  std::string system_path;
  std::string gamma;
  std::string bottom;
  std::string top;
  std::string dot_path;
  std::string json_path;
  std::size_t max_elems = 1u << 20;
};

inline int run_interval(const IntervalOptions& opt, std::ostream& out) {
  return with_system(load_system(opt.system_path), [&](const auto& sys) {
    const GammaSpec gamma = parse_gamma(sys, opt.gamma);
    const auto bottom = canonicalize(sys, parse_word(sys, opt.bottom));
    const auto top = canonicalize(sys, parse_word(sys, opt.top));
    const auto iv = cambrian_interval(bottom, top, gamma, opt.max_elems);
    PropertyReport report = lattice_property_report(iv.lattice);
    const PropertyReport trim_report = verify_trim_interval(iv);
    for (const auto& [name, verdict] : trim_report.entries()) {
      if (name != "trim") report.add(name, verdict);
    }
    if (!opt.json_path.empty()) {
      write_text_file(opt.json_path, interval_to_json(iv, report).dump(2) + "\n");
    }
    if (!opt.dot_path.empty()) {
      write_text_file(opt.dot_path, interval_to_dot(iv));
    }
    out << "interval: " << iv.lattice.size() << " elements, " << iv.lattice.covers().size()
        << " covers, length " << lattice_length(iv.lattice)
        << ", trim=" << (report.find("trim")->holds ? "true" : "false") << "\n";
    if (opt.json_path.empty() && opt.dot_path.empty()) {
      out << interval_to_json(iv, report).dump(2) << "\n";
    }
    return 0;
  });
}

struct AnalyzeOptions {
  std::string lattice_path;
  std::string json_path;
};

inline int run_analyze(const AnalyzeOptions& opt, std::ostream& out) {
  const FiniteLattice L = load_lattice(opt.lattice_path);
  const PropertyReport report = lattice_property_report(L);
  const Json j = report_json(Json{{"lattice", opt.lattice_path}, {"size", L.size()}}, report);
  if (!opt.json_path.empty()) {
    write_text_file(opt.json_path, j.dump(2) + "\n");
    out << "analyzed " << L.size() << " elements, trim="
        << (report.find("trim")->holds ? "true" : "false") << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return 0;
}

struct SweepOptions {
  std::string config_path;
  std::string json_path;
};

inline int run_sweep_cmd(const SweepOptions& opt, std::ostream& out) {
  const std::vector<SweepSystem> systems = sweep_config_from_json(load_json_file(opt.config_path));
  const SweepResult result = run_sweep(systems);
  const Json j = result.to_json();
  if (!opt.json_path.empty()) {
    write_text_file(opt.json_path, j.dump(2) + "\n");
    out << "sweep: " << result.intervals << " intervals, " << result.failures << " failures, "
        << result.skips << " skips\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return result.all_hold ? 0 : 1;
}

}  // namespace cambrian
