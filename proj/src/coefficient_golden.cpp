// coefficient_golden.cpp - frozen coefficient table (see tools/gen_golden).
#include "corrsense/coefficient_golden.hpp"

namespace corrsense::filter {

const std::vector<GoldenCoefficient>& golden_coefficients() {
  static const std::vector<GoldenCoefficient> table = {
      {"fid", PulseSequence{{}}, -0.5, 0.79788456080286529},
      {"fid", PulseSequence{{}}, 0, 0.5},
      {"fid", PulseSequence{{}}, 0.5, 0.53192304053524353},
      {"fid", PulseSequence{{}}, 0.90000000000000002, 1.7490999120205626},
      {"hahn", PulseSequence{{0.5}}, -0.5, 1.4588737733881598},
      {"cpmg2", PulseSequence{{0.25, 0.75}}, -0.5, 1.8864588208289375},
      {"cpmg4", PulseSequence{{0.125, 0.375, 0.625, 0.875}}, -0.5, 2.5473194337917606},
      {"hahn", PulseSequence{{0.5}}, 0.5, 0.22032973752843152},
      {"cpmg2", PulseSequence{{0.25, 0.75}}, 0.5, 0.16816074098119849},
      {"cpmg4", PulseSequence{{0.125, 0.375, 0.625, 0.875}}, 0.5, 0.12252339387233496},
      {"hahn", PulseSequence{{0.5}}, 1, 0.1103178000763258},
      {"cpmg2", PulseSequence{{0.25, 0.75}}, 1, 0.062458146407839879},
      {"cpmg4", PulseSequence{{0.125, 0.375, 0.625, 0.875}}, 1, 0.032531349158638971},
      {"hahn", PulseSequence{{0.5}}, 1.5, 0.062318660601362423},
      {"cpmg2", PulseSequence{{0.25, 0.75}}, 1.5, 0.02477705551200796},
      {"cpmg4", PulseSequence{{0.125, 0.375, 0.625, 0.875}}, 1.5, 0.0090342953414452899},
      {"hahn", PulseSequence{{0.5}}, 2, 0.041666666666666664},
      {"cpmg2", PulseSequence{{0.25, 0.75}}, 2, 0.010416666666666666},
      {"cpmg4", PulseSequence{{0.125, 0.375, 0.625, 0.875}}, 2, 0.0026041666666666665},
      {"hahn", PulseSequence{{0.5}}, 2.5, 0.039298268116494256},
      {"cpmg2", PulseSequence{{0.25, 0.75}}, 2.5, 0.0046574864277275614},
      {"cpmg4", PulseSequence{{0.125, 0.375, 0.625, 0.875}}, 2.5, 0.00078583421630286127},
      {"uneven3", PulseSequence{{0.20000000000000001, 0.45000000000000001, 0.75}}, 0.5, 0.14106081144945312},
      {"uneven3", PulseSequence{{0.20000000000000001, 0.45000000000000001, 0.75}}, 1, 0.045015691563262218},
      {"uneven3", PulseSequence{{0.20000000000000001, 0.45000000000000001, 0.75}}, 2, 0.0079166666666666743},
      {"asym1", PulseSequence{{0.29999999999999999}}, -0.5, 1.4112704192957068},
      {"asym1", PulseSequence{{0.29999999999999999}}, 0.5, 0.2659389516511132},
  };
  return table;
}

}  // namespace corrsense::filter
