from .models import pointRing, projectiveSpaceRing, projectiveSpaceClass, pointInProjectiveSpaceModel, \
    linearSubspaceModel, formalBaseRing, formalGysinModel
from .special_cases import pointDefectCoefficients, pointBlowupDefect, firstClassFormula, secondClassFormula
