import gupqm.model.system.parameters.ModelParams
