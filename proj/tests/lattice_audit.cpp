#include "lattice_audit.hpp"

#include "inferlab/restrictions.hpp"

namespace inferlab::testing {

LatticeAudit& lattice_audit() {
  static LatticeAudit audit;
  return audit;
}

void install_lattice_audit() {
  set_run_observer([](const HypSequence& p, const Informant& I) {
    auto& audit = lattice_audit();
    ++audit.sequences;
    for (const std::string& f : lattice_counterexamples(p, I)) {
      audit.failures.push_back(f + " on " + p.provenance.learner + " / " + p.provenance.informant);
    }
  });
}

}  // namespace inferlab::testing
