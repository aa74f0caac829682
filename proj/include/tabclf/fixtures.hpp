#pragma once

#include "tabclf/data_model.hpp"

namespace tabclf::fixtures {

/// Common child-health variables plus the anemia supplement; the label is
/// the pre-binned anemia level.
Schema anemia_schema();

/// Common child-health variables plus the malaria supplement; the label is
/// the malaria test result.
Schema malaria_schema();

}  // namespace tabclf::fixtures
