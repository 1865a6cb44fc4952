// Copyright 2026 limnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

namespace limnet {

// Dynamical state of the slave-laser network, structure-of-arrays so the
// integrator kernels can stream it.  Each laser carries two linear
// polarization modes at +/-45 degrees ("p"/"m") stored as amplitude (photon
// units, A = sqrt(photon number)) and phase relative to the master laser,
// plus one carrier (excited-state electron) number.
struct LaserNetworkState {
    int m = 0;
    double t = 0.0;
    std::vector<double> amp_p, phase_p;
    std::vector<double> amp_m, phase_m;
    std::vector<double> carriers;

    static LaserNetworkState floor_state(int m, double amp_floor) {
        LaserNetworkState st;
        st.m = m;
        st.amp_p.assign(m, amp_floor);
        st.phase_p.assign(m, 0.0);
        st.amp_m.assign(m, amp_floor);
        st.phase_m.assign(m, 0.0);
        st.carriers.assign(m, 0.0);
        return st;
    }
};

}  // namespace limnet
