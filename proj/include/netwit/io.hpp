#pragma once

#include <string>

#include "netwit/inflation.hpp"
#include "netwit/postselect.hpp"
#include "netwit/seesaw.hpp"
#include "netwit/witness.hpp"

// JSON interchange. States: {"dims":[...],"entries":[[re,im],...]} row-major
// at full precision. Distributions: {"cardinalities":[...],
// "probabilities":[...]}. Parsing failures raise std::runtime_error carrying
// the parser's position information.

namespace netwit {

std::string to_json(const DensityMatrix& m);
DensityMatrix density_matrix_from_json(const std::string& text,
                                       const Tolerances& tol = {});

std::string to_json(const JointDistribution& p);
JointDistribution distribution_from_json(const std::string& text);

std::string to_json(const WitnessReport& r);

std::string to_json(const PostselectionScan& s);

std::string to_json(const NetworkModel& m);
NetworkModel network_model_from_json(const std::string& text);

// Conic debug dump: {"format","sense","blocks","objective","eq_constraints"},
// terms encoded as [block,row,col,re_coeff,im_coeff].
std::string to_json(const SdpProblem& p);

// POVM file: {"parties":[{"effects":[{"dims":[...],"entries":[...]},...]},..]}
ProductMeasurement measurement_from_json(const std::string& text,
                                         const Tolerances& tol = {});

// Target vector: {"entries":[[re,im],...]}; normalized on load.
Vector state_vector_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace netwit
